#include "distkit/trajectory.hpp"

#include <cmath>

#include "distkit/error.hpp"

namespace distkit {
namespace {

std::string shape_of(const Trajectory& t) {
  return std::to_string(t.values().rows()) + "x" + std::to_string(t.values().cols()) +
         " (dt=" + std::to_string(t.dt()) + ")";
}

}  // namespace

Trajectory::Trajectory(Eigen::MatrixXd values, double dt) : values_(std::move(values)), dt_(dt) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw InvalidArgument("trajectory needs at least one time step and one output");
  if (!(dt_ > 0.0) || !std::isfinite(dt_))
    throw InvalidArgument("trajectory dt must be positive and finite");
  if (!values_.allFinite()) throw NonFiniteValue("trajectory contains NaN or Inf");
}

bool Trajectory::comparable_with(const Trajectory& other) const noexcept {
  return values_.rows() == other.values_.rows() && values_.cols() == other.values_.cols() &&
         dt_ == other.dt_;
}

void require_comparable(const Trajectory& a, const Trajectory& b) {
  if (!a.comparable_with(b))
    throw ShapeMismatch("trajectory shapes differ: " + shape_of(a) + " vs " + shape_of(b));
}

SampleSet::SampleSet(std::vector<Trajectory> trajectories, std::string label)
    : trajectories_(std::move(trajectories)), label_(std::move(label)) {
  if (trajectories_.empty()) throw InvalidArgument("sample set must contain a trajectory");
  for (const auto& t : trajectories_) require_comparable(trajectories_.front(), t);
}

void require_comparable(const SampleSet& a, const SampleSet& b) {
  require_comparable(a.front(), b.front());
}

}  // namespace distkit
