#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "distkit/error.hpp"
#include "distkit/kernels.hpp"
#include "oracles.hpp"

using distkit::SampleSet;
using distkit::Trajectory;
using distkit::kernels::KernelConfig;
namespace k = distkit::kernels;

namespace {

Trajectory scalar(double v, double dt = 1.0) { return Trajectory(Eigen::MatrixXd::Constant(1, 1, v), dt); }

SampleSet scalars(std::initializer_list<double> vs) {
  std::vector<Trajectory> ts;
  for (double v : vs) ts.push_back(scalar(v));
  return SampleSet(std::move(ts));
}

}  // namespace

// =============================================================================
// gaussian_kernel
// =============================================================================

TEST(GaussianKernel, IdentityIsOne) {
  std::mt19937_64 rng(1);
  const Trajectory a(oracle::random_matrix(rng, 5, 3), 0.1);
  EXPECT_EQ(k::gaussian_kernel(a, a, {0.3, 1.0}), 1.0);
}

TEST(GaussianKernel, ScalarPair) {
  EXPECT_NEAR(k::gaussian_kernel(scalar(0), scalar(2), {1.0, 1.0}), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(k::gaussian_kernel(scalar(0), scalar(2), {1.0, 1.0}), 0.135335, 1e-6);
}

TEST(GaussianKernel, MatchesDoubleSumOracle) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = oracle::random_matrix(rng, 3, 2);
    const auto b = oracle::random_matrix(rng, 3, 2);
    const double got = k::gaussian_kernel(Trajectory(a, 1.0), Trajectory(b, 1.0), {0.7, 1.0});
    EXPECT_NEAR(got, oracle::gaussian_kernel(a, b, 0.7), 1e-14);
  }
}

TEST(GaussianKernel, SymmetricBoundedAndIncreasingInSigma) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const Trajectory a(oracle::random_matrix(rng, 4, 2, 0.0, 0.3), 0.5);
    const Trajectory b(oracle::random_matrix(rng, 4, 2, 0.0, 0.3), 0.5);
    const double s1 = 0.5 + rep * 0.01;
    const double kab = k::gaussian_kernel(a, b, {s1, 1.0});
    EXPECT_EQ(kab, k::gaussian_kernel(b, a, {s1, 1.0}));
    EXPECT_GT(kab, 0.0);
    EXPECT_LT(kab, 1.0);
    EXPECT_LT(kab, k::gaussian_kernel(a, b, {s1 * 1.5, 1.0}));
  }
}

TEST(GaussianKernel, RejectsShapeMismatchAndBadSigma) {
  const Trajectory a(Eigen::MatrixXd::Zero(3, 1), 0.1);
  const Trajectory b(Eigen::MatrixXd::Zero(4, 1), 0.1);
  const Trajectory c(Eigen::MatrixXd::Zero(3, 1), 0.2);
  EXPECT_THROW(k::gaussian_kernel(a, b, {}), distkit::ShapeMismatch);
  EXPECT_THROW(k::gaussian_kernel(a, c, {}), distkit::ShapeMismatch);
  EXPECT_THROW(k::gaussian_kernel(a, a, {0.0, 1.0}), distkit::InvalidArgument);
}

TEST(Trajectory, RejectsNonFiniteInput) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 1);
  v(1, 0) = std::nan("");
  EXPECT_THROW(Trajectory(v, 0.1), distkit::NonFiniteValue);
  v(1, 0) = INFINITY;
  EXPECT_THROW(Trajectory(v, 0.1), distkit::NonFiniteValue);
  EXPECT_THROW(Trajectory(Eigen::MatrixXd::Zero(2, 1), 0.0), distkit::InvalidArgument);
}

// =============================================================================
// gram_matrix
// =============================================================================

TEST(GramMatrix, Singleton) {
  const auto s = scalars({3.0});
  const auto g = k::gram_matrix(s, s, {1.0, 1.0});
  ASSERT_EQ(g.rows(), 1);
  EXPECT_EQ(g(0, 0), 1.0);
}

TEST(GramMatrix, SelfGramSymmetricUnitDiagonal) {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_set(rng, 9, 6, 2);
  const auto g = k::gram_matrix(s, {1.3, 1.0});
  EXPECT_TRUE(g == g.transpose());
  for (int i = 0; i < g.rows(); ++i) EXPECT_EQ(g(i, i), 1.0);
  EXPECT_TRUE(k::gram_matrix(s, s, {1.3, 1.0}).isApprox(g, 1e-15));
}

TEST(GramMatrix, CrossMatchesLoopingOracle) {
  std::mt19937_64 rng(5);
  const auto a = oracle::random_set(rng, 4, 5, 2);
  const auto b = oracle::random_set(rng, 3, 5, 2);
  const auto g = k::gram_matrix(a, b, {0.9, 1.0});
  ASSERT_EQ(g.rows(), 4);
  ASSERT_EQ(g.cols(), 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(g(i, j), oracle::gaussian_kernel(a[i].values(), b[j].values(), 0.9), 1e-15);
}

TEST(GramMatrix, PositiveSemidefinite) {
  std::mt19937_64 rng(13);
  for (std::size_t m : {2u, 10u, 25u, 50u}) {
    const auto s = oracle::random_set(rng, m, 4, 2, 0.0, 0.5);
    const auto g = k::gram_matrix(s, {0.8, 1.0});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8) << "m=" << m;
  }
}

TEST(GramMatrix, ShapeMismatch) {
  std::mt19937_64 rng(2);
  const auto a = oracle::random_set(rng, 2, 5, 2);
  const auto b = oracle::random_set(rng, 2, 5, 1);
  EXPECT_THROW(k::gram_matrix(a, b, {}), distkit::ShapeMismatch);
}

// =============================================================================
// median_pairwise_distance and the sigma meta-heuristic
// =============================================================================

TEST(MedianDistance, SinglePair) {
  EXPECT_EQ(k::median_pairwise_distance(scalars({0.0}), scalars({2.0})), 2.0);
}

TEST(MedianDistance, ThreePoints) {
  EXPECT_EQ(k::median_pairwise_distance(scalars({0.0, 1.0}), scalars({3.0})), 2.0);
}

TEST(MedianDistance, EvenCountAveragesMiddlePair) {
  // pairs of {0, 1, 3, 7}: 1 3 7 2 6 4 -> sorted 1 2 3 4 6 7 -> (3 + 4) / 2
  EXPECT_EQ(k::median_pairwise_distance(scalars({0.0, 1.0}), scalars({3.0, 7.0})), 3.5);
}

TEST(MedianDistance, TranslationInvariant) {
  std::mt19937_64 rng(17);
  const auto a = oracle::random_set(rng, 5, 4, 2);
  const auto b = oracle::random_set(rng, 6, 4, 2);
  const Eigen::MatrixXd offset = Eigen::MatrixXd::Constant(4, 2, 0.25);
  auto shift = [&](const SampleSet& s) {
    std::vector<Trajectory> ts;
    for (const auto& t : s) ts.emplace_back(t.values() + offset, t.dt());
    return SampleSet(std::move(ts));
  };
  EXPECT_NEAR(k::median_pairwise_distance(a, b), k::median_pairwise_distance(shift(a), shift(b)),
              1e-12);
}

TEST(MedianDistance, IdenticalTrajectoriesAreDegenerate) {
  EXPECT_THROW(k::median_pairwise_distance(scalars({1.0, 1.0}), scalars({1.0})),
               distkit::DegenerateData);
  EXPECT_THROW(k::median_pairwise_distance(scalars({1.0}), SampleSet({scalar(1.0)})),
               distkit::DegenerateData);
}

TEST(LowerQuantile, IndexRule) {
  const std::vector<double> v = {5, 3, 9, 1, 7, 2, 8, 4, 10, 6};
  EXPECT_EQ(k::lower_quantile(v, 0.1), 1.0);   // ceil(1) - 1 = 0
  EXPECT_EQ(k::lower_quantile(v, 0.15), 2.0);  // ceil(1.5) - 1 = 1
  EXPECT_EQ(k::lower_quantile(v, 0.95), 10.0);
  EXPECT_EQ(k::lower_quantile(v, 0.0), 1.0);
  EXPECT_EQ(k::lower_quantile({4.0}, 0.1), 4.0);
  EXPECT_THROW(k::lower_quantile({}, 0.1), distkit::InvalidArgument);
}

TEST(SigmaMetaHeuristic, SinglePairIsItsMedian) {
  const std::vector<std::pair<SampleSet, SampleSet>> pairs = {{scalars({0.0}), scalars({2.5})}};
  EXPECT_EQ(k::sigma_meta_heuristic(pairs), 2.5);
}

TEST(SigmaMetaHeuristic, TenPairsOracle) {
  // Pair i has the single distance d_i = i + 1, listed out of order.
  std::vector<std::pair<SampleSet, SampleSet>> pairs;
  std::vector<double> medians;
  for (double d : {7.0, 3.0, 10.0, 1.0, 5.0, 2.0, 9.0, 4.0, 8.0, 6.0}) {
    pairs.emplace_back(scalars({0.0}), scalars({d}));
    medians.push_back(d);
  }
  std::sort(medians.begin(), medians.end());
  const std::size_t idx = static_cast<std::size_t>(std::ceil(0.1 * 10.0)) - 1;
  EXPECT_EQ(k::sigma_meta_heuristic(pairs), medians[idx]);
  EXPECT_EQ(k::sigma_meta_heuristic(pairs), 1.0);
}

TEST(SigmaMetaHeuristic, IdenticalMedians) {
  std::vector<std::pair<SampleSet, SampleSet>> pairs;
  for (int i = 0; i < 4; ++i) pairs.emplace_back(scalars({double(i)}), scalars({i + 1.5}));
  EXPECT_EQ(k::sigma_meta_heuristic(pairs), 1.5);
}

TEST(SigmaMetaHeuristic, Errors) {
  std::vector<std::pair<SampleSet, SampleSet>> none;
  EXPECT_THROW(k::sigma_meta_heuristic(none), distkit::InvalidArgument);
  EXPECT_THROW(k::sigma_from_medians({0.0, 0.0}), distkit::DegenerateData);
  const std::vector<std::pair<SampleSet, SampleSet>> same = {{scalars({1.0}), scalars({1.0})}};
  EXPECT_THROW(k::sigma_meta_heuristic(same), distkit::DegenerateData);
}
