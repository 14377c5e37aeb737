#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "distkit/trajectory.hpp"

namespace distkit::kernels {

/// Gaussian kernel on whole output trajectories.
struct KernelConfig {
  double sigma = 1.0;
  /// Upper bound on kernel values; 1 for the Gaussian kernel.
  double bound = 1.0;
};

/// Throws InvalidArgument unless sigma and bound are positive and finite.
void validate(const KernelConfig& cfg);

/// Sum over time steps and outputs of (a - b)^2.
double squared_distance(const Trajectory& a, const Trajectory& b);

/// exp(-||a - b||_F^2 / (2 sigma^2)). Symmetric, in (0, 1], and 1 exactly
/// when a == b.
double gaussian_kernel(const Trajectory& a, const Trajectory& b, const KernelConfig& cfg);

/// Entry (i, j) is gaussian_kernel(a[i], b[j]). Rows are computed in parallel.
Eigen::MatrixXd gram_matrix(const SampleSet& a, const SampleSet& b, const KernelConfig& cfg);

/// Gram matrix of a set with itself: upper triangle computed once and
/// mirrored, so the result is exactly symmetric with a unit diagonal.
Eigen::MatrixXd gram_matrix(const SampleSet& a, const KernelConfig& cfg);

/// Median Frobenius distance over all unordered pairs of distinct members of
/// the union a ∪ b (within-set pairs included). For an even pair count the
/// two middle values are averaged. Throws DegenerateData when the median is 0.
double median_pairwise_distance(const SampleSet& a, const SampleSet& b);

/// Lower-value quantile: the element at index ceil(q * n) - 1 of the sorted
/// values, clamped to [0, n - 1]. No interpolation.
double lower_quantile(std::vector<double> values, double q);

/// Bandwidth shared by a whole family of comparisons: the 0.1 lower quantile
/// of the per-pair median distances.
double sigma_meta_heuristic(std::span<const std::pair<SampleSet, SampleSet>> pairs);

/// Same rule applied to precomputed per-pair medians.
double sigma_from_medians(std::vector<double> medians);

}  // namespace distkit::kernels
