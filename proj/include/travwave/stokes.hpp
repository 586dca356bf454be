#pragma once

#include "travwave/spectral.hpp"

namespace travwave {

/// Small-amplitude expansion phi = eps xi_1 + eps^p xi_p + ...,
/// c = c_0 + eps^(p-1) c_(p-1) + ..., computed on a discretization.
struct StokesExpansion {
  double k0 = 0.0;
  double c0 = 0.0;
  /// cos(k0 x), normalized to unit L^2(0, L) norm.
  Wave xi1;
  int order = 2;
  double c_correction = 0.0;
  /// Orthogonal to xi1; zero coefficient on the kappa_1 mode.
  Wave xi_p;
  /// Even p >= 4 with a vanishing c_(p-1): the corrected guess is not usable.
  bool degenerate = false;
};

enum class GuessKind { first_order, corrected };

/// Discrete L^2(0, L) inner product of two half-period profiles.
double l2_inner(const Grid& grid, std::span<const double> u, std::span<const double> v);

/// c0 = alpha(2 pi / L).
double bifurcation_speed(const Equation& equation);

/// Throws ResonantMode when alpha(kappa_l) = c0 for some l != 1.
StokesExpansion stokes_expansion(const Discretization& disc);

/// eps xi_1 + eps^p xi_p and the matching speed.
std::pair<Wave, double> stokes_profile(const StokesExpansion& expansion, double eps, bool corrected = true);

/// Initial guess with waveheight `height`: (height/2) cos(kappa_1 x) at c0
/// for the first-order guess, or the corrected profile with eps chosen so the
/// waveheight matches.
std::pair<Wave, double> stokes_guess(const Discretization& disc, double height, GuessKind kind);

} // namespace travwave
