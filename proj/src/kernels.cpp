#include "distkit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "distkit/error.hpp"
#include "distkit/parallel.hpp"

namespace distkit::kernels {

void validate(const KernelConfig& cfg) {
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
    throw InvalidArgument("kernel sigma must be positive and finite");
  if (!(cfg.bound > 0.0) || !std::isfinite(cfg.bound))
    throw InvalidArgument("kernel bound must be positive and finite");
}

double squared_distance(const Trajectory& a, const Trajectory& b) {
  require_comparable(a, b);
  return (a.values() - b.values()).squaredNorm();
}

double gaussian_kernel(const Trajectory& a, const Trajectory& b, const KernelConfig& cfg) {
  validate(cfg);
  return std::exp(-squared_distance(a, b) / (2.0 * cfg.sigma * cfg.sigma));
}

Eigen::MatrixXd gram_matrix(const SampleSet& a, const SampleSet& b, const KernelConfig& cfg) {
  validate(cfg);
  require_comparable(a, b);
  Eigen::MatrixXd k(a.size(), b.size());
  const double scale = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  parallel_for(a.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < b.size(); ++j)
      k(i, j) = std::exp(-(a[i].values() - b[j].values()).squaredNorm() * scale);
  });
  return k;
}

Eigen::MatrixXd gram_matrix(const SampleSet& a, const KernelConfig& cfg) {
  validate(cfg);
  const std::size_t m = a.size();
  Eigen::MatrixXd k(m, m);
  const double scale = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  parallel_for(m, [&](std::size_t i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j)
      k(i, j) = std::exp(-(a[i].values() - a[j].values()).squaredNorm() * scale);
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) k(j, i) = k(i, j);
  return k;
}

double median_pairwise_distance(const SampleSet& a, const SampleSet& b) {
  require_comparable(a, b);
  std::vector<const Trajectory*> pool;
  pool.reserve(a.size() + b.size());
  for (const auto& t : a) pool.push_back(&t);
  for (const auto& t : b) pool.push_back(&t);
  if (pool.size() < 2) throw DegenerateData("median distance needs at least two trajectories");

  std::vector<double> d;
  d.reserve(pool.size() * (pool.size() - 1) / 2);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      d.push_back(std::sqrt((pool[i]->values() - pool[j]->values()).squaredNorm()));

  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + mid, d.end());
  double median = d[mid];
  if (d.size() % 2 == 0) {
    const double below = *std::max_element(d.begin(), d.begin() + mid);
    median = 0.5 * (below + median);
  }
  if (!(median > 0.0))
    throw DegenerateData("median pairwise distance is zero; cannot derive a kernel width");
  return median;
}

double lower_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty list");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  const double raw = std::ceil(q * n) - 1.0;
  const auto idx = static_cast<std::size_t>(std::clamp(raw, 0.0, n - 1.0));
  return values[idx];
}

double sigma_from_medians(std::vector<double> medians) {
  if (medians.empty()) throw InvalidArgument("sigma meta-heuristic needs at least one pair");
  if (std::none_of(medians.begin(), medians.end(), [](double v) { return v > 0.0; }))
    throw DegenerateData("all pairwise medians are zero");
  const double sigma = lower_quantile(std::move(medians), 0.1);
  if (!(sigma > 0.0)) throw DegenerateData("meta-heuristic selected a zero kernel width");
  return sigma;
}

double sigma_meta_heuristic(std::span<const std::pair<SampleSet, SampleSet>> pairs) {
  if (pairs.empty()) throw InvalidArgument("sigma meta-heuristic needs at least one pair");
  std::vector<double> medians(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    medians[i] = median_pairwise_distance(pairs[i].first, pairs[i].second);
  });
  return sigma_from_medians(std::move(medians));
}

}  // namespace distkit::kernels
