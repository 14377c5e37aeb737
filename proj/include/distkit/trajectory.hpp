#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace distkit {

/// One sampled output path: row t holds the n_y outputs measured at time t*dt,
/// for t = 0..T.
class Trajectory {
 public:
  /// Throws NonFiniteValue on NaN/Inf entries and InvalidArgument on an empty
  /// matrix or a non-positive dt.
  Trajectory(Eigen::MatrixXd values, double dt);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  double dt() const noexcept { return dt_; }

  /// Number of time steps T (rows minus one).
  std::size_t steps() const noexcept { return static_cast<std::size_t>(values_.rows()) - 1; }
  std::size_t output_dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }

  /// Same shape and same dt.
  bool comparable_with(const Trajectory& other) const noexcept;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.dt_ == b.dt_ && a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXd values_;
  double dt_;
};

/// Throws ShapeMismatch unless a and b are comparable.
void require_comparable(const Trajectory& a, const Trajectory& b);

/// m >= 1 independent trajectories sharing one shape and dt.
class SampleSet {
 public:
  SampleSet(std::vector<Trajectory> trajectories, std::string label = {});

  std::size_t size() const noexcept { return trajectories_.size(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_[i]; }
  const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }
  const std::string& label() const noexcept { return label_; }

  /// Shape and dt of every member, taken from the first.
  const Trajectory& front() const { return trajectories_.front(); }

  auto begin() const { return trajectories_.begin(); }
  auto end() const { return trajectories_.end(); }

 private:
  std::vector<Trajectory> trajectories_;
  std::string label_;
};

/// Throws ShapeMismatch unless members of a and b are comparable.
void require_comparable(const SampleSet& a, const SampleSet& b);

}  // namespace distkit
