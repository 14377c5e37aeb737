#include "distkit/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "distkit/error.hpp"
#include "distkit/parallel.hpp"

namespace distkit::gramian {
namespace {

double to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace

GramianResult empirical_gramian(const dynamics::SystemModel& model, const dynamics::State& x0,
                                double epsilon, const dynamics::SimConfig& sim) {
  if (!(epsilon > 0.0)) throw InvalidArgument("Gramian perturbation epsilon must be positive");
  const std::size_t n = model.state_dim;
  if (static_cast<std::size_t>(x0.size()) != n)
    throw ShapeMismatch("Gramian base state has the wrong dimension");

  // differences[i] = y(x0 + eps e_i) - y(x0 - eps e_i)
  std::vector<std::optional<Eigen::MatrixXd>> differences(n);
  parallel_for(n, [&](std::size_t i) {
    dynamics::State plus = x0;
    dynamics::State minus = x0;
    plus[i] += epsilon;
    minus[i] -= epsilon;
    const auto up = dynamics::simulate_deterministic(model, plus, sim);
    const auto down = dynamics::simulate_deterministic(model, minus, sim);
    differences[i].emplace(up.outputs.values() - down.outputs.values());
  });

  GramianResult r;
  r.epsilon = epsilon;
  r.W.resize(n, n);
  const double scale = sim.dt / (4.0 * epsilon * epsilon);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = differences[i]->cwiseProduct(*differences[j]).sum() * scale;
      r.W(i, j) = v;
      r.W(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r.W);
  if (solver.info() != Eigen::Success) throw Error("Gramian eigendecomposition failed");
  r.eigenvalues = solver.eigenvalues();
  r.eigenvectors = solver.eigenvectors();

  const double scale_ref = std::max(std::abs(r.eigenvalues[n - 1]), std::abs(r.eigenvalues[0]));
  r.degenerate =
      n >= 2 && std::abs(r.eigenvalues[1] - r.eigenvalues[0]) <= kEigenTieTolerance * scale_ref;
  if (!r.degenerate) {
    Eigen::VectorXd v = r.eigenvectors.col(0).normalized();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) > 1e-12) {
        if (v[k] < 0.0) v = -v;
        break;
      }
    }
    r.null_direction = std::move(v);
  }
  return r;
}

double line_angle_degrees(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (!(nu > 0.0) || !(nv > 0.0)) throw InvalidArgument("angle of a zero vector");
  const double c = std::clamp(std::abs(u.dot(v)) / (nu * nv), 0.0, 1.0);
  return to_degrees(std::acos(c));
}

double tangent_alignment(const Eigen::VectorXd& direction, const dynamics::State& x0,
                         const std::function<Eigen::VectorXd(const dynamics::State&)>& grad) {
  const Eigen::VectorXd g = grad(x0);
  if (!(g.norm() > 0.0)) throw InvalidArgument("gradient vanishes; tangent space undefined");
  if (!(direction.norm() > 0.0)) throw InvalidArgument("direction must be nonzero");
  if (g.size() != direction.size()) throw ShapeMismatch("direction and gradient differ in size");
  const double s = std::clamp(std::abs(direction.dot(g)) / (direction.norm() * g.norm()), 0.0, 1.0);
  return to_degrees(std::asin(s));
}

}  // namespace distkit::gramian
