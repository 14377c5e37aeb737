#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trajectories or sample sets whose shapes (or time steps) do not agree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// NaN or infinite value in an input.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Argument outside the operation's domain (empty set, alpha out of range...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Data that admits no meaningful answer, e.g. a zero median distance.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// Non-finite state reached during integration.
class SimulationBlowUp : public Error {
 public:
  SimulationBlowUp(std::size_t step, const std::string& detail);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Malformed input file; carries a 1-based line and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& detail);
  explicit ParseError(const std::string& detail) : Error(detail) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// Invalid experiment configuration (unknown key, bad value, missing field).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace distkit
