#include "travwave/diagnostics.hpp"

#include "travwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace travwave {

namespace {

constexpr double kCoefficientFloor = 1e-14;
constexpr std::size_t kMinFitPoints = 16;
constexpr double kSpacingTol = 1e-10;

// Three-point derivative of y(x) at interior index i on a nonuniform grid.
double three_point(double x0, double x1, double x2, double y0, double y1, double y2) {
  const double h1 = x1 - x0;
  const double h2 = x2 - x1;
  return -h2 / (h1 * (h1 + h2)) * y0 + (h2 - h1) / (h1 * h2) * y1 + h1 / (h2 * (h1 + h2)) * y2;
}

// dy/dx at every index; second-order one-sided stencils at the ends.
std::vector<double> derivative(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = three_point(x[i - 1], x[i], x[i + 1], y[i - 1], y[i], y[i + 1]);
  auto one_sided = [](double xa, double xb, double xc, double ya, double yb, double yc) {
    // Derivative at xa of the quadratic through the three points.
    const double h1 = xb - xa, h2 = xc - xa;
    return (-(h1 + h2) / (h1 * h2)) * ya + (h2 / (h1 * (h2 - h1))) * yb - (h1 / (h2 * (h2 - h1))) * yc;
  };
  out[0] = one_sided(x[0], x[1], x[2], y[0], y[1], y[2]);
  out[n - 1] = one_sided(x[n - 1], x[n - 2], x[n - 3], y[n - 1], y[n - 2], y[n - 3]);
  return out;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rss = 0.0;
};

LinearFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    fit.rss += r * r;
  }
  return fit;
}

// Polynomial model at fixed exponent m and log10(mu3): returns (log mu1, rss).
std::pair<double, double> poly_fit_at(std::span<const double> km, std::span<const double> y, double log10_mu3) {
  const double mu3 = std::pow(10.0, log10_mu3);
  double mean = 0.0;
  std::vector<double> shape(km.size());
  for (std::size_t i = 0; i < km.size(); ++i) {
    shape[i] = std::log1p(mu3 * km[i]);
    mean += y[i] + shape[i];
  }
  mean /= static_cast<double>(km.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < km.size(); ++i) {
    const double r = y[i] - mean + shape[i];
    rss += r * r;
  }
  return {mean, rss};
}

double aic(std::size_t n_obs, double rss, int n_params) {
  const double n = static_cast<double>(n_obs);
  const double floor = n * std::numeric_limits<double>::min();
  return n * std::log(std::max(rss, floor) / n) + 2.0 * n_params;
}

} // namespace

// --- functionals --------------------------------------------------------

Functionals functionals(const Equation& equation, const Wave& wave, double speed) {
  const Discretization disc(equation, wave.grid());
  const auto samples = wave.samples();
  const auto lphi = disc.apply(samples);
  double sum_sq = 0.0, sum_e = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    sum_sq += samples[i] * samples[i];
    sum_e += equation.flux_antideriv(samples[i]) + 0.5 * samples[i] * lphi[i];
  }
  // The half-grid nodes mirror to a uniform full-period grid of spacing L/(2N).
  const double h = wave.grid().length() / static_cast<double>(samples.size());
  Functionals out;
  out.v = 0.5 * h * sum_sq;
  out.e = h * sum_e;
  // Solutions are critical points of E - cV, so (E - cV)' = -V along a
  // branch; the opposite sign gives d' = V and d'' = dV/dc.
  out.d = speed * out.v - out.e;
  return out;
}

Functionals functionals(const Equation& equation, const SolutionPoint& point) {
  return functionals(equation, point.wave, point.speed);
}

std::vector<double> variational_gradient(const Equation& equation, const Wave& wave, double speed) {
  return steady_residual(equation, wave, speed, 0.0);
}

double l2_norm(const Wave& wave) {
  double sum = 0.0;
  for (double v : wave.samples()) sum += v * v;
  return std::sqrt(wave.grid().length() / static_cast<double>(wave.size()) * sum);
}

// --- d'(c) = V ------------------------------------------------------------

std::vector<DPrimeEntry> dprime_check(std::span<const double> speed, std::span<const double> d, std::span<const double> v) {
  const std::size_t n = speed.size();
  if (d.size() != n || v.size() != n) throw InvalidArgument("dprime_check: length mismatch");
  if (n < 3) throw InsufficientData("dprime_check needs at least 3 points");
  std::vector<DPrimeEntry> out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    DPrimeEntry entry;
    entry.index = i;
    entry.v = v[i];
    const double h1 = speed[i] - speed[i - 1];
    const double h2 = speed[i + 1] - speed[i];
    if (std::abs(h1) < kSpacingTol || std::abs(h2) < kSpacingTol || h1 * h2 < 0.0) {
      entry.skipped = true;
    } else {
      entry.dprime = three_point(speed[i - 1], speed[i], speed[i + 1], d[i - 1], d[i], d[i + 1]);
      const double scale = std::abs(v[i]);
      entry.mismatch = scale > 0.0 ? std::abs(entry.dprime - v[i]) / scale : std::abs(entry.dprime);
    }
    out.push_back(entry);
  }
  return out;
}

std::vector<DPrimeEntry> dprime_check(const Branch& branch, const Equation& equation) {
  std::vector<double> c, d, v;
  for (const auto& p : branch.points) {
    const auto f = functionals(equation, p);
    c.push_back(p.speed);
    d.push_back(f.d);
    v.push_back(f.v);
  }
  return dprime_check(c, d, v);
}

// --- stability --------------------------------------------------------------

StabilityReport classify_stability(const Branch& branch, const Equation& equation) {
  const std::size_t n = branch.points.size();
  if (n < 5) throw InsufficientData("stability classification needs at least 5 branch points");
  std::vector<double> s(n, 0.0), c(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = branch.points[i];
    c[i] = p.speed;
    v[i] = functionals(equation, p).v;
    if (i > 0) {
      const auto& q = branch.points[i - 1];
      s[i] = s[i - 1] + std::hypot(p.speed - q.speed, p.height - q.height);
    }
  }
  const auto dv = derivative(s, v);
  const auto dc = derivative(s, c);
  StabilityReport out;
  out.d2.resize(n);
  out.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.d2[i] = dc[i] != 0.0 ? dv[i] / dc[i] : std::numeric_limits<double>::infinity() * sign_of(dv[i]);
    out.sign[i] = sign_of(dv[i]);
  }
  // First local maximum of V along the branch; later maxima belong to the
  // spurious continuation past a terminal point.
  out.inversion_index = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (v[i] >= v[i - 1] && v[i] > v[i + 1]) {
      out.inversion_index = i;
      break;
    }
  }
  return out;
}

// --- profile shape ----------------------------------------------------------

double cusp_ratio(const SolutionPoint& point) {
  const auto samples = point.wave.samples();
  const double peak = *std::max_element(samples.begin(), samples.end());
  if (!(peak > 0.0)) throw InvalidArgument("cusp ratio undefined: profile maximum is not positive");
  return point.speed / peak;
}

int crest_count(std::span<const double> half_profile) {
  const std::size_t n = half_profile.size();
  if (n == 0) return 0;
  // Mirrored full period: phi_N .. phi_1 phi_1 .. phi_N, read circularly.
  std::vector<double> full;
  full.reserve(2 * n);
  for (std::size_t i = n; i-- > 0;) full.push_back(half_profile[i]);
  full.insert(full.end(), half_profile.begin(), half_profile.end());
  return periodic_crest_count(full);
}

int interpolant_crest_count(const Wave& wave, std::size_t factor) { return crest_count(refine(wave, factor).samples()); }

int periodic_crest_count(std::span<const double> full, double min_level) {
  if (full.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(full.begin(), full.end());
  const double range = *hi - *lo;
  const double tol = 1e-10 * range;
  if (!(range > 0.0)) return 0;

  const std::size_t m = full.size();
  auto joined = [&](std::size_t i) { return std::abs(full[i] - full[(i + m - 1) % m]) <= tol; };
  std::size_t start = 0;
  while (start < m && joined(start)) ++start;
  if (start == m) return 0;

  // Collapse runs of (nearly) equal neighbours into plateaus.
  std::vector<double> plateaus;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = (start + k) % m;
    if (k == 0 || !joined(i)) plateaus.push_back(full[i]);
    else plateaus.back() = std::max(plateaus.back(), full[i]);
  }
  const std::size_t r = plateaus.size();
  if (r < 2) return 0;
  const double floor_value = *lo + min_level * range;
  int count = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const double prev = plateaus[(i + r - 1) % r];
    const double next = plateaus[(i + 1) % r];
    if (plateaus[i] > prev && plateaus[i] > next && plateaus[i] > floor_value) ++count;
  }
  return count;
}

// --- spectral decay fits ---------------------------------------------------

FitReport fit_decay(std::span<const double> wavenumbers, std::span<const double> magnitudes) {
  if (wavenumbers.size() != magnitudes.size()) throw InvalidArgument("fit_decay: length mismatch");
  std::vector<double> k, y;
  for (std::size_t i = 0; i < wavenumbers.size(); ++i) {
    const double mag = std::abs(magnitudes[i]);
    if (wavenumbers[i] > 0.0 && mag > kCoefficientFloor) {
      k.push_back(wavenumbers[i]);
      y.push_back(std::log(mag));
    }
  }
  if (k.size() < kMinFitPoints) throw InsufficientData("fit_decay needs at least 16 coefficients above the floor");

  FitReport rep;
  rep.observations = k.size();
  std::vector<double> kp(k.size());

  // Exponent grid 0.25, 0.30, ..., 4.00.
  constexpr int kGridSteps = 75;
  auto exponent_at = [](int i) { return 0.25 + 0.05 * i; };

  double best_exp = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGridSteps; ++i) {
    const double n = exponent_at(i);
    for (std::size_t j = 0; j < k.size(); ++j) kp[j] = std::pow(k[j], n);
    const LinearFit fit = least_squares_line(kp, y);
    if (fit.rss < best_exp) {
      best_exp = fit.rss;
      rep.n = n;
      rep.nu1 = std::exp(fit.intercept);
      rep.nu2 = -fit.slope;
    }
  }

  double best_poly = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGridSteps; ++i) {
    const double m = exponent_at(i);
    for (std::size_t j = 0; j < k.size(); ++j) kp[j] = std::pow(k[j], m);
    // Coarse scan in log10(mu3), then golden-section refinement.
    double best_t = -12.0, best_rss = std::numeric_limits<double>::infinity();
    for (double t = -12.0; t <= 12.0 + 1e-12; t += 0.25) {
      const double rss = poly_fit_at(kp, y, t).second;
      if (rss < best_rss) {
        best_rss = rss;
        best_t = t;
      }
    }
    double a = best_t - 0.25, b = best_t + 0.25;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = poly_fit_at(kp, y, x1).second, f2 = poly_fit_at(kp, y, x2).second;
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = poly_fit_at(kp, y, x1).second;
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = poly_fit_at(kp, y, x2).second;
      }
    }
    const double t = f1 < f2 ? x1 : x2;
    const auto [log_mu1, rss] = poly_fit_at(kp, y, t);
    const double chosen_rss = std::min(rss, best_rss);
    const double chosen_t = rss <= best_rss ? t : best_t;
    if (chosen_rss < best_poly) {
      best_poly = chosen_rss;
      rep.m = m;
      rep.mu3 = std::pow(10.0, chosen_t);
      rep.mu1 = std::exp(poly_fit_at(kp, y, chosen_t).first);
      rep.mu2 = 1.0;
    }
  }

  rep.residual_l2_exp = std::sqrt(best_exp);
  rep.residual_l2_poly = std::sqrt(best_poly);
  // Three free parameters each: (nu1, nu2, n) and (mu1, mu3, m) with mu2 = 1.
  rep.aic_exp = aic(rep.observations, best_exp, 3);
  rep.aic_poly = aic(rep.observations, best_poly, 3);
  rep.winner = rep.aic_exp <= rep.aic_poly ? FitReport::Model::exponential : FitReport::Model::polynomial;
  return rep;
}

FitReport fit_decay(const SolutionPoint& point) {
  // Modes l >= N/2 carry mostly aliasing and truncation error of the
  // collocation, not the decay of the underlying profile.
  const auto coeffs = point.wave.coefficients();
  const auto kappa = point.wave.grid().wavenumbers();
  const std::size_t window = coeffs.size() / 2;
  if (window < 2) throw InsufficientData("fit_decay needs at least 16 coefficients above the floor");
  return fit_decay(kappa.subspan(1, window - 1), std::span<const double>(coeffs).subspan(1, window - 1));
}

// --- whole-branch report ------------------------------------------------------

BranchReport analyze_branch(const Branch& branch, const Equation& equation, bool with_fits) {
  BranchReport rep;
  const std::size_t n = branch.points.size();
  if (n == 0) throw InsufficientData("cannot analyze an empty branch");
  for (const auto& p : branch.points) {
    rep.functionals.push_back(functionals(equation, p));
    rep.l2.push_back(l2_norm(p.wave));
    rep.crests.push_back(crest_count(p));
    rep.interpolant_crests.push_back(interpolant_crest_count(p.wave));
    const auto samples = p.wave.samples();
    const double peak = *std::max_element(samples.begin(), samples.end());
    rep.cusp_ratios.push_back(peak > 0.0 ? p.speed / peak : std::numeric_limits<double>::quiet_NaN());
    if (with_fits) {
      try {
        rep.fits.push_back(fit_decay(p));
      } catch (const InsufficientData&) {
        rep.fits.push_back(std::nullopt);
      }
    } else {
      rep.fits.push_back(std::nullopt);
    }
  }

  rep.terminal_index = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.crests[i] > 1 || rep.interpolant_crests[i] > 1) {
      rep.first_split_index = i;
      rep.terminal_index = i > 0 ? i - 1 : 0;
      break;
    }
  }
  rep.terminal_cusp_ratio = rep.cusp_ratios[rep.terminal_index];

  // Turning point and max-L2 point on the part of the branch up to the
  // terminal solution.
  std::size_t turning = 0, max_l2 = 0;
  for (std::size_t i = 1; i <= rep.terminal_index; ++i) {
    if (branch.points[i].speed < branch.points[turning].speed) turning = i;
    if (rep.l2[i] > rep.l2[max_l2]) max_l2 = i;
  }
  rep.turning_index = turning;
  rep.turning_interior = turning > 0 && turning < rep.terminal_index;
  rep.max_l2_index = max_l2;

  if (n >= 5) rep.stability = classify_stability(branch, equation);
  if (n >= 3) rep.dprime = dprime_check(branch, equation);
  return rep;
}

} // namespace travwave
