#include "distkit/example_systems.hpp"

#include <cmath>

#include "distkit/error.hpp"

namespace distkit::examples {
namespace {

std::function<Eigen::VectorXd(Rng&)> gaussian_noise(std::size_t dim, double variance) {
  if (variance < 0.0) throw InvalidArgument("measurement variance must be nonnegative");
  if (variance == 0.0) return {};
  const double sd = std::sqrt(variance);
  return [dim, sd](Rng& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd e(dim);
    for (std::size_t i = 0; i < dim; ++i) e[i] = sd * normal(rng);
    return e;
  };
}

}  // namespace

bool unobservable_line_holds(const LinearDriftParams& p) {
  const Eigen::Vector2d ones(1.0, 1.0);
  const Eigen::Vector2d image = p.A * ones;
  const bool invariant = std::abs(image[0] - image[1]) <= 1e-12 * (1.0 + image.norm());
  const bool c_null = std::abs((p.C * ones)(0)) <= 1e-12 * (1.0 + p.C.norm());
  return invariant && c_null;
}

dynamics::SystemModel linear_drift_system(const LinearDriftParams& p) {
  dynamics::SystemModel m;
  m.name = "linear_drift";
  m.state_dim = 2;
  m.output_dim = 1;
  m.noise_dim = 2;
  m.drift = [A = p.A, A0 = p.A0, omega = p.omega](const dynamics::State& x, double t) {
    dynamics::State dx = A * x + A0 * std::sin(omega * t);
    return dx;
  };
  if (!p.Sigma.isZero(0.0))
    m.diffusion = [S = p.Sigma](const dynamics::State&, double) { return Eigen::MatrixXd(S); };
  m.measurement = [C = p.C](const dynamics::State& x) {
    Eigen::VectorXd y(1);
    y[0] = C * x;
    return y;
  };
  m.measurement_noise = gaussian_noise(1, p.meas_var);
  return m;
}

double hamiltonian(const Eigen::Vector2d& x) {
  const double x1sq = x[0] * x[0];
  return -0.5 * x1sq + 0.5 * x[1] * x[1] + 0.25 * x1sq * x1sq;
}

Eigen::Vector2d hamiltonian_gradient(const Eigen::Vector2d& x) {
  return {x[0] * x[0] * x[0] - x[0], x[1]};
}

Eigen::Vector2d duffing_drift(const Eigen::Vector2d& x) {
  return {x[1], x[0] - x[0] * x[0] * x[0]};
}

dynamics::SystemModel duffing_system(const DuffingParams& p) {
  if (p.b1 < 0.0 || p.b2 < 0.0) throw InvalidArgument("Duffing diffusion gains must be nonnegative");
  dynamics::SystemModel m;
  m.name = "duffing";
  m.state_dim = 2;
  m.output_dim = 1;
  m.noise_dim = 2;
  m.drift = [](const dynamics::State& x, double) {
    return dynamics::State(duffing_drift(Eigen::Vector2d(x[0], x[1])));
  };
  if (p.b1 != 0.0 || p.b2 != 0.0) {
    const Eigen::MatrixXd g = Eigen::Vector2d(p.b1, p.b2).asDiagonal();
    m.diffusion = [g](const dynamics::State&, double) { return g; };
  }
  m.measurement = [](const dynamics::State& x) {
    Eigen::VectorXd y(1);
    y[0] = hamiltonian(Eigen::Vector2d(x[0], x[1]));
    return y;
  };
  m.measurement_noise = gaussian_noise(1, p.meas_var);
  return m;
}

dynamics::SystemModel discrete_linear_system(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R) {
  const auto n = A.rows();
  if (n == 0 || A.cols() != n) throw ShapeMismatch("A must be square and non-empty");
  if (C.cols() != n || C.rows() == 0) throw ShapeMismatch("C must have as many columns as A");
  if (Q.size() != 0 && Q.rows() != n) throw ShapeMismatch("Q must have as many rows as A");
  if (R.size() != 0 && R.rows() != C.rows()) throw ShapeMismatch("R must have as many rows as C");

  dynamics::SystemModel m;
  m.name = "discrete_linear";
  m.time_domain = dynamics::TimeDomain::discrete;
  m.state_dim = static_cast<std::size_t>(n);
  m.output_dim = static_cast<std::size_t>(C.rows());
  m.noise_dim = static_cast<std::size_t>(Q.cols());
  m.drift = [A](const dynamics::State& x, double) { return dynamics::State(A * x); };
  if (Q.size() != 0 && !Q.isZero(0.0))
    m.diffusion = [Q](const dynamics::State&, double) { return Q; };
  else
    m.noise_dim = 0;
  m.measurement = [C](const dynamics::State& x) { return Eigen::VectorXd(C * x); };
  if (R.size() != 0 && !R.isZero(0.0)) {
    m.measurement_noise = [R](Rng& rng) {
      std::normal_distribution<double> normal;
      Eigen::VectorXd e(R.cols());
      for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = normal(rng);
      return Eigen::VectorXd(R * e);
    };
  }
  return m;
}

}  // namespace distkit::examples
