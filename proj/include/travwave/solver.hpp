#pragma once

#include "travwave/spectral.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace travwave {

/// Extra scalar equation Omega(phi, c, a, B) = 0 closing the extended system.
struct BoundaryCondition {
  enum class Kind {
    mean_zero,    ///< sum_n phi(x_n) = 0, B free
    homogeneous,  ///< B = 0
    solitary,     ///< phi(x_N) = 0 (trough at zero)
    const_level,  ///< B = level
  };

  Kind kind = Kind::homogeneous;
  double level = 0.0;

  static BoundaryCondition mean_zero() { return {Kind::mean_zero, 0.0}; }
  static BoundaryCondition homogeneous() { return {Kind::homogeneous, 0.0}; }
  static BoundaryCondition solitary() { return {Kind::solitary, 0.0}; }
  static BoundaryCondition const_level(double level) { return {Kind::const_level, level}; }

  static BoundaryCondition from_name(const std::string& name, double level = 0.0);
  std::string name() const;

  double evaluate(std::span<const double> samples, double b) const;
};

/// Anchor P3 = (c3, a3) and direction d_perp; (c, a) = P3 + theta d_perp.
struct ContinuationFrame {
  double anchor_speed = 0.0;
  double anchor_height = 0.0;
  double perp_speed = 1.0;
  double perp_height = 0.0;

  ContinuationFrame() = default;
  ContinuationFrame(double c3, double a3, double dperp_c, double dperp_a);

  /// Frame that holds the waveheight at `height` and lets the speed vary.
  static ContinuationFrame fixed_height(double speed, double height) { return {speed, height, 1.0, 0.0}; }

  double speed(double theta) const noexcept { return anchor_speed + theta * perp_speed; }
  double height(double theta) const noexcept { return anchor_height + theta * perp_height; }
};

struct SolutionPoint {
  Wave wave;
  double speed = 0.0;
  double height = 0.0;
  double b = 0.0;
  double theta = 0.0;
  double residual_norm = 0.0;
  int newton_iters = 0;
};

struct NewtonOptions {
  double tol = 1e-12;
  int max_iters = 50;
  /// Factorizations with reciprocal condition below this raise SingularJacobian.
  double min_rcond = 1e-14;
  double min_pivot = 1e-14;
};

/// Residual of the (N+2)-dimensional extended system: N collocation rows,
/// the boundary row and the waveheight row.
Eigen::VectorXd extended_residual(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                                  std::span<const double> samples, double b, double theta);

/// Analytic Jacobian of extended_residual with respect to (phi, B, theta).
Eigen::MatrixXd jacobian(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                         std::span<const double> samples, double b, double theta);

/// Full Newton iteration on the extended system. Throws NoConvergence or
/// SingularJacobian. When `history` is given it receives the residual norm of
/// every iterate, starting with the initial guess.
SolutionPoint newton_solve(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                           const Wave& initial, double b, double theta, const NewtonOptions& opts = {},
                           std::vector<double>* history = nullptr);

} // namespace travwave
