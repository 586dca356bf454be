#include "travwave/stokes.hpp"

#include "travwave/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace travwave {

namespace {

constexpr double kResonanceTol = 1e-10;

} // namespace

double l2_inner(const Grid& grid, std::span<const double> u, std::span<const double> v) {
  if (u.size() != grid.size() || v.size() != grid.size()) throw InvalidArgument("inner product length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  // Midpoint rule over the full period: exact for cosine modes below 2N.
  return grid.length() / static_cast<double>(grid.size()) * sum;
}

double bifurcation_speed(const Equation& equation) {
  return equation.symbol(2.0 * std::numbers::pi / equation.length());
}

StokesExpansion stokes_expansion(const Discretization& disc) {
  const Grid& grid = disc.grid();
  const auto alpha = disc.multipliers();
  const std::size_t n = grid.size();
  const double c0 = alpha[1];
  for (std::size_t l = 0; l < n; ++l) {
    if (l == 1) continue;
    if (std::abs(alpha[l] - c0) < kResonanceTol) {
      std::ostringstream msg;
      msg << "mode " << l << " resonates with the fundamental mode (alpha = " << alpha[l] << ", c0 = " << c0 << ")";
      throw ResonantMode(msg.str(), l);
    }
  }

  const auto& eq = disc.equation();
  const int p = eq.zero_degree();
  const double fp = eq.flux_p_coeff();

  Wave xi1 = Wave::cosine_mode(grid, 1, 1.0 / std::sqrt(0.5 * grid.length()));
  std::vector<double> xi1_pow(n);
  for (std::size_t i = 0; i < n; ++i) xi1_pow[i] = std::pow(xi1.samples()[i], p);

  double c_corr = 0.0;
  bool degenerate = false;
  if (p > 2) {
    c_corr = fp * l2_inner(grid, xi1_pow, xi1.samples());
    // xi1^p has only even modes for even p, so the pairing vanishes.
    if (p % 2 == 0 && std::abs(c_corr) < 1e-12) degenerate = true;
  }

  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = c_corr * xi1.samples()[i] - fp * xi1_pow[i];
  auto coeffs = cosine_forward(rhs);
  for (std::size_t l = 0; l < n; ++l) coeffs[l] = (l == 1) ? 0.0 : coeffs[l] / (alpha[l] - c0);

  StokesExpansion out{2.0 * std::numbers::pi / grid.length(),
                      c0,
                      std::move(xi1),
                      p,
                      c_corr,
                      Wave::from_coefficients(grid, std::move(coeffs)),
                      degenerate};
  return out;
}

std::pair<Wave, double> stokes_profile(const StokesExpansion& expansion, double eps, bool corrected) {
  const auto xi1 = expansion.xi1.samples();
  const auto xip = expansion.xi_p.samples();
  std::vector<double> samples(xi1.size());
  const double eps_p = std::pow(eps, expansion.order);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = eps * xi1[i] + (corrected ? eps_p * xip[i] : 0.0);
  const double speed = expansion.c0 + (corrected ? std::pow(eps, expansion.order - 1) * expansion.c_correction : 0.0);
  return {Wave(expansion.xi1.grid(), std::move(samples)), speed};
}

std::pair<Wave, double> stokes_guess(const Discretization& disc, double height, GuessKind kind) {
  if (kind == GuessKind::first_order)
    return {Wave::cosine_mode(disc.grid(), 1, 0.5 * height), disc.multipliers()[1]};

  const StokesExpansion exp = stokes_expansion(disc);
  if (exp.degenerate) return {Wave::cosine_mode(disc.grid(), 1, 0.5 * height), exp.c0};

  // Solve eps h1 + eps^p hp = height for eps by scalar Newton.
  const double h1 = exp.xi1.waveheight();
  const double hp = exp.xi_p.waveheight();
  const int p = exp.order;
  double eps = height / h1;
  for (int it = 0; it < 50; ++it) {
    const double g = eps * h1 + std::pow(eps, p) * hp - height;
    const double dg = h1 + p * std::pow(eps, p - 1) * hp;
    if (dg == 0.0) break;
    const double step = g / dg;
    eps -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(eps))) break;
  }
  return stokes_profile(exp, eps, true);
}

} // namespace travwave
