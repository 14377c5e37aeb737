#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "distkit/dynamics.hpp"
#include "distkit/error.hpp"
#include "distkit/example_systems.hpp"
#include "distkit/kernels.hpp"
#include "distkit/mmd_test.hpp"

namespace ex = distkit::examples;
namespace dyn = distkit::dynamics;

namespace {

ex::LinearDriftParams nominal_linear() {
  ex::LinearDriftParams p;
  p.Sigma.setZero();
  p.meas_var = 0.0;
  return p;
}

}  // namespace

// =============================================================================
// linear drift system
// =============================================================================

TEST(LinearDrift, DefaultParameters) {
  const ex::LinearDriftParams p;
  EXPECT_EQ(p.A, (Eigen::Matrix2d() << -2, -1, -1, -2).finished());
  EXPECT_EQ(p.A0, Eigen::Vector2d(3, 3));
  EXPECT_EQ(p.omega, 2.0);
  EXPECT_EQ(p.Sigma, 0.1 * Eigen::Matrix2d::Identity());
  EXPECT_EQ(p.C, Eigen::RowVector2d(-1, 1));
  EXPECT_EQ(p.meas_var, 0.01);
}

TEST(LinearDrift, UnobservableLine) {
  const ex::LinearDriftParams p;
  EXPECT_EQ((p.C * Eigen::Vector2d(1, 1))(0), 0.0);
  EXPECT_EQ(p.A * Eigen::Vector2d(1, 1), Eigen::Vector2d(-3, -3));
  EXPECT_TRUE(ex::unobservable_line_holds(p));
  ex::LinearDriftParams q;
  q.C = Eigen::RowVector2d(1, 0);
  EXPECT_FALSE(ex::unobservable_line_holds(q));
}

TEST(LinearDrift, NominalOutputConstantAlongTheLine) {
  const auto model = ex::linear_drift_system(nominal_linear());
  const dyn::SimConfig sim{2.0, 0.01, 0};
  const Eigen::Vector2d xa(1.5, 0.5);
  const auto ref = dyn::simulate_deterministic(model, xa, sim);
  for (double s : {-1.0, -0.3, 0.7, 2.0}) {
    const auto other = dyn::simulate_deterministic(model, Eigen::Vector2d(xa + s * Eigen::Vector2d(1, 1)), sim);
    EXPECT_LT((other.outputs.values() - ref.outputs.values()).cwiseAbs().maxCoeff(), 1e-9);
  }
  const auto off = dyn::simulate_deterministic(model, Eigen::Vector2d(1.5, 1.5), sim);
  EXPECT_GT((off.outputs.values() - ref.outputs.values()).cwiseAbs().maxCoeff(), 0.1);
}

TEST(LinearDrift, DriftIncludesSinusoidalForcing) {
  const auto model = ex::linear_drift_system();
  const dyn::State dx = model.drift(Eigen::Vector2d(1, 0), 0.25);
  EXPECT_NEAR(dx[0], -2.0 + 3.0 * std::sin(0.5), 1e-15);
  EXPECT_NEAR(dx[1], -1.0 + 3.0 * std::sin(0.5), 1e-15);
}

// =============================================================================
// Duffing oscillator
// =============================================================================

TEST(Hamiltonian, Values) {
  EXPECT_EQ(ex::hamiltonian({0, 0}), 0.0);
  EXPECT_EQ(ex::hamiltonian({1, 0}), -0.25);
  EXPECT_EQ(ex::hamiltonian({0, 1}), 0.5);
}

TEST(Hamiltonian, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Vector2d x(u(rng), u(rng));
    const double h = 1e-6;
    const Eigen::Vector2d fd((ex::hamiltonian(x + Eigen::Vector2d(h, 0)) - ex::hamiltonian(x - Eigen::Vector2d(h, 0))) / (2 * h),
                             (ex::hamiltonian(x + Eigen::Vector2d(0, h)) - ex::hamiltonian(x - Eigen::Vector2d(0, h))) / (2 * h));
    EXPECT_LT((fd - ex::hamiltonian_gradient(x)).norm(), 1e-6);
  }
}

TEST(Duffing, Equilibria) {
  const auto model = ex::duffing_system();
  EXPECT_EQ(model.drift(Eigen::Vector2d(0, 0), 0.0), Eigen::Vector2d(0, 0));
  EXPECT_EQ(model.drift(Eigen::Vector2d(1, 0), 0.0), Eigen::Vector2d(0, 0));
  EXPECT_EQ(model.drift(Eigen::Vector2d(-1, 0), 0.0), Eigen::Vector2d(0, 0));
}

TEST(Duffing, FieldIsOdd) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Vector2d x(u(rng), u(rng));
    EXPECT_EQ(ex::duffing_drift(-x), -ex::duffing_drift(x));
  }
}

TEST(Duffing, FieldIsTangentToLevelSets) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Vector2d x(u(rng), u(rng));
    EXPECT_NEAR(ex::hamiltonian_gradient(x).dot(ex::duffing_drift(x)), 0.0, 1e-12);
  }
}

TEST(Duffing, NominalConservesHamiltonian) {
  const auto model = ex::duffing_system({0.0, 0.0, 0.0});
  const auto run = dyn::simulate_deterministic(model, Eigen::Vector2d(1.2, 0.0), {1.0, 1e-4, 0});
  const double h0 = ex::hamiltonian({1.2, 0.0});
  EXPECT_LT((run.outputs.values().array() - h0).abs().maxCoeff(), 1e-3);
}

TEST(Duffing, OutputIsHamiltonianPlusNoise) {
  const auto model = ex::duffing_system({0.05, 0.05, 0.5});
  ASSERT_TRUE(model.measurement_noise);
  ASSERT_TRUE(model.diffusion);
  EXPECT_EQ(model.measurement(Eigen::Vector2d(0, 1))[0], 0.5);
  const Eigen::MatrixXd g = model.diffusion(Eigen::Vector2d(0, 0), 0.0);
  EXPECT_EQ(g, (Eigen::MatrixXd(2, 2) << 0.05, 0, 0, 0.05).finished());
}

// =============================================================================
// discrete linear system
// =============================================================================

TEST(DiscreteLinear, NoiseFreeOutputIsCAtX0) {
  Eigen::MatrixXd A(2, 2), C(1, 2);
  A << 0.9, 0.2, -0.1, 0.8;
  C << 1.0, 2.0;
  const auto model = ex::discrete_linear_system(A, C, Eigen::MatrixXd(), Eigen::MatrixXd());
  const Eigen::Vector2d x0(1.0, -1.0);
  const auto run = dyn::simulate_deterministic(model, x0, {5.0, 1.0, 0});
  Eigen::VectorXd x = x0;
  for (int t = 0; t <= 5; ++t) {
    EXPECT_NEAR(run.outputs.values()(t, 0), (C * x)(0), 1e-14);
    x = A * x;
  }
}

TEST(DiscreteLinear, UnobservablePairGivesIdenticalNominalOutputs) {
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd C = (Eigen::MatrixXd(1, 2) << 1, 0).finished();
  const auto model = ex::discrete_linear_system(A, C, Eigen::MatrixXd(), Eigen::MatrixXd());
  const dyn::SimConfig sim{10.0, 1.0, 0};
  EXPECT_TRUE(dyn::simulate_deterministic(model, Eigen::Vector2d(0, 0), sim).outputs ==
              dyn::simulate_deterministic(model, Eigen::Vector2d(0, 1), sim).outputs);
}

TEST(DiscreteLinear, DimensionMismatch) {
  EXPECT_THROW(ex::discrete_linear_system(Eigen::MatrixXd::Identity(2, 3), Eigen::MatrixXd::Ones(1, 2),
                                          Eigen::MatrixXd(), Eigen::MatrixXd()),
               distkit::ShapeMismatch);
  EXPECT_THROW(ex::discrete_linear_system(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Ones(1, 3),
                                          Eigen::MatrixXd(), Eigen::MatrixXd()),
               distkit::ShapeMismatch);
  EXPECT_THROW(ex::discrete_linear_system(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Ones(1, 2),
                                          Eigen::MatrixXd::Ones(3, 2), Eigen::MatrixXd()),
               distkit::ShapeMismatch);
  EXPECT_THROW(ex::discrete_linear_system(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Ones(1, 2),
                                          Eigen::MatrixXd(), Eigen::MatrixXd::Ones(2, 2)),
               distkit::ShapeMismatch);
}

TEST(DiscreteLinear, UnobservableNoisyPairRarelyTriggers) {
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd C = (Eigen::MatrixXd(1, 2) << 1, 0).finished();
  const auto model = ex::discrete_linear_system(A, C, 0.1 * Eigen::MatrixXd::Identity(2, 2),
                                                0.1 * Eigen::MatrixXd::Identity(1, 1));
  int triggers = 0;
  for (int r = 0; r < 50; ++r) {
    const auto a = dyn::sample_output_set(model, dyn::InitialSpec::point(Eigen::Vector2d(0, 0)), 50,
                                          {10.0, 1.0, 1000u + r});
    const auto b = dyn::sample_output_set(model, dyn::InitialSpec::point(Eigen::Vector2d(0, 1)), 50,
                                          {10.0, 1.0, 5000u + r});
    const double sigma = distkit::kernels::median_pairwise_distance(a, b);
    triggers += distkit::mmd::two_sample_test(
                    a, b, {sigma, 1.0},
                    {0.05, distkit::mmd::ThresholdMethod::bootstrap, 200, static_cast<std::uint64_t>(r)})
                    .trigger;
  }
  EXPECT_LE(triggers, 5);
}
