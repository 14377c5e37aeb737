#include "distkit/error.hpp"

namespace distkit {

SimulationBlowUp::SimulationBlowUp(std::size_t step, const std::string& detail)
    : Error("simulation blew up at step " + std::to_string(step) + ": " + detail),
      step_(step) {}

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& detail)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
            detail),
      line_(line),
      column_(column) {}

}  // namespace distkit
