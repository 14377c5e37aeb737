#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "distkit/dynamics.hpp"

namespace distkit::gramian {

struct GramianResult {
  Eigen::MatrixXd W;
  Eigen::VectorXd eigenvalues;  ///< ascending
  Eigen::MatrixXd eigenvectors;  ///< column i pairs with eigenvalues[i]
  /// Unit eigenvector of the smallest eigenvalue, first nonzero entry
  /// positive. Empty when the two smallest eigenvalues tie.
  std::optional<Eigen::VectorXd> null_direction;
  bool degenerate = false;
  double epsilon = 0.0;
};

/// Relative tolerance under which the two smallest eigenvalues count as tied.
inline constexpr double kEigenTieTolerance = 1e-9;

/// Empirical observability Gramian of the nominal model at x0 from central
/// differences of size epsilon along each coordinate:
///
///     W_ij = 1/(4 eps²) Σ_{t=0}^{T} (y⁺ⁱ_t - y⁻ⁱ_t)ᵀ (y⁺ʲ_t - y⁻ʲ_t) dt
///
/// Noise terms of the model are ignored. The upper triangle is computed and
/// mirrored, so W is exactly symmetric.
GramianResult empirical_gramian(const dynamics::SystemModel& model, const dynamics::State& x0,
                                double epsilon, const dynamics::SimConfig& sim);

/// Unsigned angle in degrees in [0, 90] between `direction` and the
/// hyperplane orthogonal to grad(x0). Throws InvalidArgument on a zero
/// gradient or zero direction.
double tangent_alignment(const Eigen::VectorXd& direction, const dynamics::State& x0,
                         const std::function<Eigen::VectorXd(const dynamics::State&)>& grad);

/// Unsigned angle in degrees in [0, 90] between the lines spanned by u and v.
double line_angle_degrees(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

}  // namespace distkit::gramian
