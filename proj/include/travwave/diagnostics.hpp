#pragma once

#include "travwave/continuation.hpp"

#include <optional>
#include <span>
#include <vector>

namespace travwave {

/// V = 1/2 int phi^2, E = int (F(phi) + 1/2 phi L phi), d = c V - E, all over
/// one full period.
struct Functionals {
  double v = 0.0;
  double e = 0.0;
  double d = 0.0;
};

Functionals functionals(const Equation& equation, const SolutionPoint& point);
Functionals functionals(const Equation& equation, const Wave& wave, double speed);

/// E'(phi) - c V'(phi) = f(phi) + L phi - c phi at every node.
std::vector<double> variational_gradient(const Equation& equation, const Wave& wave, double speed);

/// Discrete L^2(0, L) norm of the mirrored profile.
double l2_norm(const Wave& wave);

struct DPrimeEntry {
  std::size_t index = 0;
  bool skipped = false;
  double dprime = 0.0;
  double v = 0.0;
  double mismatch = 0.0;  ///< |d' - V| / |V|
};

/// Finite-difference d'(c) against V at every interior point. Points next to
/// a fold or with |dc| < 1e-10 are marked skipped.
std::vector<DPrimeEntry> dprime_check(std::span<const double> speed, std::span<const double> d, std::span<const double> v);
std::vector<DPrimeEntry> dprime_check(const Branch& branch, const Equation& equation);

struct StabilityReport {
  /// dV/dc taken along the branch (d''(c) by d'(c) = V).
  std::vector<double> d2;
  /// +1 (stable) / -1 (unstable) / 0. This is the sign of d''(c) continued
  /// through folds: the sign of dV/ds with s the arclength oriented away from
  /// the bifurcation point, which changes exactly at the maximum of V.
  std::vector<int> sign;
  std::size_t inversion_index = 0;
};

/// Needs at least 5 points.
StabilityReport classify_stability(const Branch& branch, const Equation& equation);

/// c / max phi. Throws InvalidArgument when max phi <= 0.
double cusp_ratio(const SolutionPoint& point);

/// Strict local maxima of the mirrored full-period profile, wrapping around
/// and counting plateaus once.
int crest_count(std::span<const double> half_profile);
inline int crest_count(const SolutionPoint& point) { return crest_count(point.wave.samples()); }
/// Crests of the trigonometric interpolant, read off a `factor` times finer
/// grid. Past the Whitham terminal point the node values keep a single
/// (spiked) crest while the interpolant between them splits into two.
int interpolant_crest_count(const Wave& wave, std::size_t factor = 4);
/// Same count on a full period of samples. Maxima not exceeding
/// min + min_level * (max - min) are ignored (radiation ripples).
int periodic_crest_count(std::span<const double> full, double min_level = 0.0);

struct FitReport {
  double nu1 = 0.0, nu2 = 0.0, n = 0.0;
  double mu1 = 0.0, mu2 = 1.0, mu3 = 0.0, m = 0.0;
  double residual_l2_exp = 0.0, residual_l2_poly = 0.0;
  double aic_exp = 0.0, aic_poly = 0.0;
  std::size_t observations = 0;
  enum class Model { exponential, polynomial } winner = Model::exponential;
};

/// Fits |coefficient| against E(k) = nu1 exp(-nu2 k^n) and
/// P(k) = mu1 / (mu2 + mu3 k^m) in log space and ranks them by AIC.
/// Throws InsufficientData below 16 usable points.
FitReport fit_decay(std::span<const double> wavenumbers, std::span<const double> magnitudes);
/// Uses the cosine coefficients 1 <= l < N/2 above 1e-14.
FitReport fit_decay(const SolutionPoint& point);

struct BranchReport {
  std::vector<Functionals> functionals;
  std::vector<double> l2;
  std::vector<int> crests;
  std::vector<int> interpolant_crests;
  std::vector<double> cusp_ratios;  ///< NaN where undefined
  std::vector<std::optional<FitReport>> fits;
  std::optional<StabilityReport> stability;
  std::vector<DPrimeEntry> dprime;
  /// Minimum speed and maximum L^2 norm, both searched up to terminal_index.
  std::size_t turning_index = 0;
  bool turning_interior = false;
  std::size_t max_l2_index = 0;
  /// Last single-crest point before the first profile whose node values or
  /// interpolant show more than one crest.
  std::size_t terminal_index = 0;
  double terminal_cusp_ratio = 0.0;
  std::optional<std::size_t> first_split_index;
};

BranchReport analyze_branch(const Branch& branch, const Equation& equation, bool with_fits = true);

} // namespace travwave
