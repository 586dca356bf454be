#pragma once

#include "travwave/error.hpp"
#include "travwave/spectral.hpp"

#include <complex>
#include <vector>

namespace travwave {

/// Real L-periodic field on the uniform nodes x_m = L m / M, M even.
class PeriodicField {
public:
  PeriodicField(double length, std::vector<double> samples);

  static PeriodicField zero(double length, std::size_t size) { return {length, std::vector<double>(size, 0.0)}; }

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  std::vector<double> nodes() const;
  /// Nonnegative-frequency half of the discrete Fourier spectrum (rfft layout).
  std::vector<std::complex<double>> spectrum() const;
  double max_abs() const;

private:
  double length_;
  std::vector<double> samples_;
};

/// Even extension of a half-period wave, evaluated from its cosine series on
/// `size` full-period nodes (default 2N).
PeriodicField mirror_to_full(const Wave& wave, std::size_t size = 0);

/// Field translated by `shift` (u(x - shift)), exact for band-limited data.
PeriodicField shifted(const PeriodicField& field, double shift);

/// Pointwise sum; both fields must share length and size.
PeriodicField operator+(const PeriodicField& a, const PeriodicField& b);

struct EvolutionConfig {
  double dt = 0.0;          ///< <= 0 selects default_time_step
  double t_end = 1.0;
  bool dealias = true;      ///< alias-free truncation of the flux term (2/3 rule when quadratic)
  int snapshot_stride = 100;
  /// > 0: adaptive steps dt / 2^q, the largest with dt k_max max|f'(u)| <= cfl;
  /// dt is then only the cap.
  double cfl = 0.0;
};

struct Snapshot {
  double t = 0.0;
  PeriodicField field;
};

using Trajectory = std::vector<Snapshot>;

/// Raised when max|u| exceeds 1e6 or stops being finite. Carries everything
/// computed up to that point.
class BlowUp : public Error {
public:
  BlowUp(const std::string& what, double time, Trajectory trajectory)
    : Error(what), time_(time), trajectory_(std::move(trajectory)) {}
  double time() const noexcept { return time_; }
  const Trajectory& trajectory() const noexcept { return trajectory_; }

private:
  double time_;
  Trajectory trajectory_;
};

/// Default step 0.5 / (k_max max|f'(u0)|): the dispersive part is integrated
/// exactly, so only the flux term limits the step. Falls back to
/// 0.5 / max_j |k_j alpha(k_j)| for the zero field.
double default_time_step(const Equation& equation, const PeriodicField& initial);

/// Integrating-factor RK4 for u_t + [f(u)]_x + L u_x = 0: the dispersive part
/// is propagated exactly in Fourier space, the flux term by classical RK4.
/// The first snapshot is the initial state, the last one is at t_end.
Trajectory evolve(const Equation& equation, const PeriodicField& initial, const EvolutionConfig& cfg);

struct Conserved {
  double mass = 0.0;      ///< int u dx
  double momentum = 0.0;  ///< 1/2 int u^2 dx
};

Conserved conserved(const PeriodicField& field);

struct ShapeDeviation {
  double shift = 0.0;
  /// min over shifts of max|u - reference(. - shift)| / max|reference|
  double relative_linf = 0.0;
};

ShapeDeviation shape_deviation(const PeriodicField& field, const PeriodicField& reference);

} // namespace travwave
