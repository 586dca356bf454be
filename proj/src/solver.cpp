#include "travwave/solver.hpp"

#include "travwave/error.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace travwave {

BoundaryCondition BoundaryCondition::from_name(const std::string& name, double level) {
  if (name == "mean_zero" || name == "mean-zero" || name == "average") return mean_zero();
  if (name == "homogeneous" || name == "homogeneous_b" || name == "b_zero") return homogeneous();
  if (name == "solitary") return solitary();
  if (name == "const" || name == "const_level") return const_level(level);
  throw InvalidArgument("unknown boundary condition '" + name + "'");
}

std::string BoundaryCondition::name() const {
  switch (kind) {
  case Kind::mean_zero: return "mean_zero";
  case Kind::homogeneous: return "homogeneous";
  case Kind::solitary: return "solitary";
  case Kind::const_level: return "const_level";
  }
  return "unknown";
}

double BoundaryCondition::evaluate(std::span<const double> samples, double b) const {
  switch (kind) {
  case Kind::mean_zero: return std::accumulate(samples.begin(), samples.end(), 0.0);
  case Kind::homogeneous: return b;
  case Kind::solitary: return samples.back();
  case Kind::const_level: return b - level;
  }
  return 0.0;
}

ContinuationFrame::ContinuationFrame(double c3, double a3, double dperp_c, double dperp_a)
  : anchor_speed(c3), anchor_height(a3), perp_speed(dperp_c), perp_height(dperp_a) {
  if (!(std::hypot(dperp_c, dperp_a) > 0.0)) throw InvalidArgument("continuation frame direction must be nonzero");
}

Eigen::VectorXd extended_residual(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                                  std::span<const double> samples, double b, double theta) {
  const std::size_t n = disc.size();
  if (samples.size() != n) throw InvalidArgument("wave length does not match discretization");
  const auto rows = steady_residual(disc, samples, frame.speed(theta), b);
  Eigen::VectorXd out(n + 2);
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = rows[i];
  out(static_cast<Eigen::Index>(n)) = bc.evaluate(samples, b);
  out(static_cast<Eigen::Index>(n + 1)) = samples.front() - samples.back() - frame.height(theta);
  return out;
}

Eigen::MatrixXd jacobian(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                         std::span<const double> samples, double /*b*/, double theta) {
  const auto n = static_cast<Eigen::Index>(disc.size());
  if (samples.size() != disc.size()) throw InvalidArgument("wave length does not match discretization");
  const double c = frame.speed(theta);
  const auto& eq = disc.equation();

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 2, n + 2);
  jac.topLeftCorner(n, n) = disc.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = samples[static_cast<std::size_t>(i)];
    jac(i, i) += -c + eq.flux_prime(u);
    jac(i, n) = -1.0;
    jac(i, n + 1) = -frame.perp_speed * u;
  }

  switch (bc.kind) {
  case BoundaryCondition::Kind::mean_zero: jac.row(n).head(n).setOnes(); break;
  case BoundaryCondition::Kind::homogeneous:
  case BoundaryCondition::Kind::const_level: jac(n, n) = 1.0; break;
  case BoundaryCondition::Kind::solitary: jac(n, n - 1) = 1.0; break;
  }

  jac(n + 1, 0) += 1.0;
  jac(n + 1, n - 1) -= 1.0;
  jac(n + 1, n + 1) = -frame.perp_height;
  return jac;
}

SolutionPoint newton_solve(const Discretization& disc, const BoundaryCondition& bc, const ContinuationFrame& frame,
                           const Wave& initial, double b, double theta, const NewtonOptions& opts,
                           std::vector<double>* history) {
  if (initial.size() != disc.size()) throw InvalidArgument("initial wave does not match discretization size");
  const std::size_t n = disc.size();
  const auto ni = static_cast<Eigen::Index>(n);

  Eigen::VectorXd state(ni + 2);
  for (std::size_t i = 0; i < n; ++i) state(static_cast<Eigen::Index>(i)) = initial.samples()[i];
  state(ni) = b;
  state(ni + 1) = theta;
  if (!state.allFinite()) throw InvalidArgument("initial guess is not finite");

  auto residual_of = [&](const Eigen::VectorXd& s) {
    return extended_residual(disc, bc, frame, std::span<const double>(s.data(), n), s(ni), s(ni + 1));
  };
  auto snapshot = [&](const Eigen::VectorXd& s) { return std::vector<double>(s.data(), s.data() + s.size()); };

  Eigen::VectorXd residual = residual_of(state);
  double norm = residual.lpNorm<Eigen::Infinity>();
  if (history) history->assign(1, norm);

  int iter = 0;
  while (!(norm <= opts.tol)) {
    if (iter >= opts.max_iters || !std::isfinite(norm)) {
      std::ostringstream msg;
      msg << "Newton did not converge after " << iter << " iterations (residual " << norm << ")";
      throw NoConvergence(msg.str(), norm, snapshot(state), iter);
    }
    const Eigen::MatrixXd jac = jacobian(disc, bc, frame, std::span<const double>(state.data(), n), state(ni), state(ni + 1));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    const double rcond = lu.rcond();
    if (!(rcond >= opts.min_rcond) || !(min_pivot >= opts.min_pivot)) {
      std::ostringstream msg;
      msg << "singular Jacobian (rcond " << rcond << ", min pivot " << min_pivot << ")";
      throw SingularJacobian(msg.str(), rcond);
    }
    state -= lu.solve(residual);
    ++iter;
    residual = residual_of(state);
    norm = residual.lpNorm<Eigen::Infinity>();
    if (history) history->push_back(norm);
  }

  std::vector<double> samples(state.data(), state.data() + n);
  SolutionPoint out{Wave(disc.grid(), std::move(samples)), frame.speed(state(ni + 1)), frame.height(state(ni + 1)),
                    state(ni), state(ni + 1), norm, iter};
  return out;
}

} // namespace travwave
