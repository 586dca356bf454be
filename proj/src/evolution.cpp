#include "travwave/evolution.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace travwave {

namespace {

using cplx = std::complex<double>;

constexpr double kBlowUpLevel = 1e6;

double wavenumber(double length, std::size_t j) { return 2.0 * std::numbers::pi / length * static_cast<double>(j); }

// Cross-correlation of u with reference shifted by s, from the two spectra.
double correlation(std::span<const cplx> u_hat, std::span<const cplx> r_hat, double length, std::size_t m, double s) {
  double sum = 0.0;
  for (std::size_t j = 0; j < u_hat.size(); ++j) {
    const double weight = (j == 0 || 2 * j == m) ? 1.0 : 2.0;
    sum += weight * std::real(u_hat[j] * std::conj(r_hat[j]) * std::exp(cplx(0.0, wavenumber(length, j) * s)));
  }
  return sum;
}

} // namespace

PeriodicField::PeriodicField(double length, std::vector<double> samples) : length_(length), samples_(std::move(samples)) {
  if (!(length > 0.0)) throw InvalidArgument("periodic field length must be positive");
  if (samples_.size() < 2 || samples_.size() % 2 != 0) throw InvalidArgument("periodic field size must be even and >= 2");
}

std::vector<double> PeriodicField::nodes() const {
  std::vector<double> x(size());
  for (std::size_t m = 0; m < x.size(); ++m) x[m] = length_ * static_cast<double>(m) / static_cast<double>(size());
  return x;
}

std::vector<cplx> PeriodicField::spectrum() const { return fft::rfft(samples_); }

double PeriodicField::max_abs() const {
  double out = 0.0;
  for (double v : samples_) out = std::max(out, std::abs(v));
  return out;
}

PeriodicField mirror_to_full(const Wave& wave, std::size_t size) {
  const std::size_t n = wave.size();
  const std::size_t m = size == 0 ? 2 * n : size;
  if (m % 2 != 0) throw InvalidArgument("full-period grid size must be even");
  const auto coeffs = wave.coefficients();
  const Grid& grid = wave.grid();
  // cos(kappa_l x_m) = cos(2 pi l m / M), looked up by (l m) mod M.
  std::vector<double> table(m);
  for (std::size_t j = 0; j < m; ++j) table[j] = std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
  std::vector<double> samples(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) sum += grid.weight(l) * coeffs[l] * table[(l * i) % m];
    samples[i] = sum;
  }
  return {grid.length(), std::move(samples)};
}

PeriodicField shifted(const PeriodicField& field, double shift) {
  auto spec = field.spectrum();
  const std::size_t m = field.size();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double k = wavenumber(field.length(), j);
    if (2 * j == m) spec[j] *= std::cos(k * shift);
    else spec[j] *= std::exp(cplx(0.0, -k * shift));
  }
  return {field.length(), fft::irfft(spec, m)};
}

PeriodicField operator+(const PeriodicField& a, const PeriodicField& b) {
  if (a.size() != b.size() || a.length() != b.length()) throw InvalidArgument("cannot add fields on different grids");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.samples()[i] + b.samples()[i];
  return {a.length(), std::move(out)};
}

double default_time_step(const Equation& equation, const PeriodicField& initial) {
  const std::size_t m = initial.size();
  double slope = 0.0;
  for (double u : initial.samples()) slope = std::max(slope, std::abs(equation.flux_prime(u)));
  const double k_max = wavenumber(equation.length(), m / 2);
  if (slope > 0.0) return 0.5 / (k_max * slope);
  double max_rate = 0.0;
  for (std::size_t j = 0; j <= m / 2; ++j) {
    const double k = wavenumber(equation.length(), j);
    max_rate = std::max(max_rate, std::abs(k * equation.symbol(k)));
  }
  return max_rate > 0.0 ? 0.5 / max_rate : 1e-2;
}

Trajectory evolve(const Equation& equation, const PeriodicField& initial, const EvolutionConfig& cfg) {
  if (!(cfg.t_end > 0.0)) throw InvalidArgument("evolution end time must be positive");
  if (cfg.snapshot_stride < 1) throw InvalidArgument("snapshot stride must be >= 1");
  if (cfg.cfl < 0.0) throw InvalidArgument("cfl number must be nonnegative");
  if (initial.length() != equation.length()) throw InvalidArgument("field period differs from the equation wavelength");

  const std::size_t m = initial.size();
  const std::size_t nk = m / 2 + 1;
  const bool adaptive = cfg.cfl > 0.0;
  const double dt_request = cfg.dt > 0.0 ? cfg.dt : default_time_step(equation, initial);
  const auto steps = static_cast<long long>(std::max(1.0, std::ceil(cfg.t_end / dt_request - 1e-9)));
  const double dt = adaptive ? dt_request : cfg.t_end / static_cast<double>(steps);
  const double k_max = wavenumber(equation.length(), m / 2);

  // ik for the flux derivative; the Nyquist mode has no odd derivative.
  // Dealiasing keeps j < M/(p+1), the band on which a degree-p product of
  // retained modes is alias free (the 2/3 rule for quadratic fluxes).
  std::vector<cplx> ik(nk), omega(nk);
  const auto degree = static_cast<std::size_t>(equation.zero_degree());
  for (std::size_t j = 0; j < nk; ++j) {
    const double k = wavenumber(equation.length(), j);
    const bool keep = 2 * j != m && (!cfg.dealias || j * (degree + 1) < m);
    ik[j] = keep ? cplx(0.0, k) : cplx(0.0, 0.0);
    omega[j] = 2 * j == m ? 0.0 : k * equation.symbol(k);
  }

  struct Factors {
    std::vector<cplx> full, half;
  };
  auto make_factors = [&](double h) {
    Factors f{std::vector<cplx>(nk), std::vector<cplx>(nk)};
    for (std::size_t j = 0; j < nk; ++j) {
      f.full[j] = std::exp(cplx(0.0, -omega[j].real() * h));
      f.half[j] = std::exp(cplx(0.0, -0.5 * omega[j].real() * h));
    }
    return f;
  };
  // Adaptive steps are dt / 2^q; one factor set per level q.
  std::map<int, Factors> levels;
  levels.emplace(0, make_factors(dt));
  Factors tail;

  double max_u = 0.0;
  fft::RealTransform work(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  auto nonlinear = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
    std::copy(v.begin(), v.end(), work.spectrum().begin());
    work.inverse();
    max_u = 0.0;
    for (double& w : work.values()) {
      const double u = w * inv_m;
      if (!std::isfinite(u)) max_u = std::numeric_limits<double>::infinity();
      max_u = std::max(max_u, std::abs(u));
      w = equation.flux(u);
    }
    work.forward();
    const auto f_hat = work.spectrum();
    for (std::size_t j = 0; j < nk; ++j) out[j] = -ik[j] * f_hat[j];
  };

  Trajectory traj;
  traj.push_back({0.0, initial});
  std::vector<cplx> v = initial.spectrum();
  std::vector<cplx> tmp(nk), k1(nk), k2(nk), k3(nk), k4(nk);

  long long step = 0;
  double t = 0.0;
  for (bool last = false; !last;) {
    nonlinear(v, k1);
    if (!(max_u <= kBlowUpLevel)) {
      std::ostringstream msg;
      msg << "blow-up at t = " << t << " (max |u| = " << max_u << ")";
      throw BlowUp(msg.str(), t, std::move(traj));
    }

    double h = dt;
    const Factors* f = &levels.begin()->second;
    if (!adaptive) {
      last = step + 1 == steps;
    } else {
      // |f'| grows with |u| for every flux in the catalog.
      const double slope = std::max(std::abs(equation.flux_prime(max_u)), std::abs(equation.flux_prime(-max_u)));
      int q = 0;
      while (q < 60 && std::ldexp(dt, -q) * k_max * slope > cfg.cfl) ++q;
      h = std::ldexp(dt, -q);
      if (t + h >= cfg.t_end) {
        h = cfg.t_end - t;
        tail = make_factors(h);
        f = &tail;
        last = true;
      } else {
        auto it = levels.find(q);
        if (it == levels.end()) it = levels.emplace(q, make_factors(h)).first;
        f = &it->second;
      }
    }
    const auto& e_full = f->full;
    const auto& e_half = f->half;

    for (std::size_t j = 0; j < nk; ++j) tmp[j] = e_half[j] * (v[j] + 0.5 * h * k1[j]);
    nonlinear(tmp, k2);
    for (std::size_t j = 0; j < nk; ++j) tmp[j] = e_half[j] * v[j] + 0.5 * h * k2[j];
    nonlinear(tmp, k3);
    for (std::size_t j = 0; j < nk; ++j) tmp[j] = e_full[j] * v[j] + h * e_half[j] * k3[j];
    nonlinear(tmp, k4);
    for (std::size_t j = 0; j < nk; ++j)
      v[j] = e_full[j] * v[j] + h / 6.0 * (e_full[j] * k1[j] + 2.0 * e_half[j] * (k2[j] + k3[j]) + k4[j]);

    ++step;
    t = last ? cfg.t_end : adaptive ? t + h : dt * static_cast<double>(step);
    if (step % cfg.snapshot_stride == 0 || last) {
      PeriodicField field(equation.length(), fft::irfft(v, m));
      const double peak = field.max_abs();
      if (!(peak <= kBlowUpLevel)) {
        std::ostringstream msg;
        msg << "blow-up at t = " << t << " (max |u| = " << peak << ")";
        throw BlowUp(msg.str(), t, std::move(traj));
      }
      traj.push_back({t, std::move(field)});
    }
  }
  return traj;
}

Conserved conserved(const PeriodicField& field) {
  const double h = field.length() / static_cast<double>(field.size());
  Conserved out;
  for (double u : field.samples()) {
    out.mass += u;
    out.momentum += u * u;
  }
  out.mass *= h;
  out.momentum *= 0.5 * h;
  return out;
}

ShapeDeviation shape_deviation(const PeriodicField& field, const PeriodicField& reference) {
  if (field.size() != reference.size() || field.length() != reference.length())
    throw InvalidArgument("shape deviation needs fields on the same grid");
  const std::size_t m = field.size();
  const double length = field.length();
  const double h = length / static_cast<double>(m);
  const auto u_hat = field.spectrum();
  const auto r_hat = reference.spectrum();

  // Coarse: best grid shift by circular cross-correlation.
  std::vector<cplx> prod(u_hat.size());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = u_hat[j] * std::conj(r_hat[j]);
  const auto corr = fft::irfft(prod, m);
  const std::size_t best = static_cast<std::size_t>(std::max_element(corr.begin(), corr.end()) - corr.begin());

  // Fine: golden-section maximization of the continuous correlation.
  double a = (static_cast<double>(best) - 1.0) * h, b = (static_cast<double>(best) + 1.0) * h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = correlation(u_hat, r_hat, length, m, x1), f2 = correlation(u_hat, r_hat, length, m, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 > f2) {
      b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = correlation(u_hat, r_hat, length, m, x1);
    } else {
      a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = correlation(u_hat, r_hat, length, m, x2);
    }
  }
  double shift = 0.5 * (a + b);
  shift = std::fmod(shift, length);
  if (shift < 0.0) shift += length;

  const PeriodicField moved = shifted(reference, shift);
  double diff = 0.0;
  for (std::size_t i = 0; i < m; ++i) diff = std::max(diff, std::abs(field.samples()[i] - moved.samples()[i]));
  const double scale = reference.max_abs();
  return {shift, scale > 0.0 ? diff / scale : diff};
}

} // namespace travwave
