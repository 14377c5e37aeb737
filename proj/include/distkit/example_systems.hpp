#pragma once

#include <Eigen/Dense>

#include "distkit/dynamics.hpp"

namespace distkit::examples {

/// dX = (A X + A0 sin(omega t)) dt + Sigma dW,  Y = C X + eps,  eps ~ N(0, meas_var).
struct LinearDriftParams {
  Eigen::Matrix2d A = (Eigen::Matrix2d() << -2.0, -1.0, -1.0, -2.0).finished();
  Eigen::Vector2d A0 = Eigen::Vector2d(3.0, 3.0);
  double omega = 2.0;
  Eigen::Matrix2d Sigma = 0.1 * Eigen::Matrix2d::Identity();
  Eigen::RowVector2d C = Eigen::RowVector2d(-1.0, 1.0);
  double meas_var = 0.01;
};

dynamics::SystemModel linear_drift_system(const LinearDriftParams& p = {});

/// True when span{(1, 1)} is A-invariant and annihilated by C, i.e. when the
/// nominal class of indistinguishability of every state x is x + span{(1, 1)}.
/// Holds for the default parameters.
bool unobservable_line_holds(const LinearDriftParams& p);

/// Undamped, unforced Duffing oscillator observed through its Hamiltonian:
/// dX1 = X2 dt + b1 dW1, dX2 = (X1 - X1^3) dt + b2 dW2, Y = h(X) + eps.
struct DuffingParams {
  double b1 = 0.05;
  double b2 = 0.05;
  double meas_var = 0.5;
};

dynamics::SystemModel duffing_system(const DuffingParams& p = {});

/// h(x) = -x1²/2 + x2²/2 + x1⁴/4, conserved by the nominal Duffing flow.
double hamiltonian(const Eigen::Vector2d& x);

/// Gradient of hamiltonian: (x1³ - x1, x2).
Eigen::Vector2d hamiltonian_gradient(const Eigen::Vector2d& x);

/// Nominal Duffing vector field (x2, x1 - x1³).
Eigen::Vector2d duffing_drift(const Eigen::Vector2d& x);

/// Discrete-time x_{t+1} = A x_t + Q eta_t, y_t = C x_t + R eps_t with
/// standard normal eta and eps. Q or R may be zero-sized to disable that noise.
/// Throws ShapeMismatch on inconsistent dimensions.
dynamics::SystemModel discrete_linear_system(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                                             const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R);

}  // namespace distkit::examples
