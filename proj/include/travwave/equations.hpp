#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace travwave {

/// Catalog of model equations u_t + [f(u)]_x + L u_x = 0, with L a Fourier
/// multiplier of symbol alpha(k).
enum class EquationKind {
  kdv,           ///< f = 3/4 u^2, alpha = 1 - k^2/6
  gkdv,          ///< f = u^(q+1)/(q+1), alpha = 1 - k^2
  whitham,       ///< f = 3/4 u^2, alpha = sqrt(tanh(k)/k)
  benjamin_ono,  ///< f = u^2/2, alpha = 1 - |k|
  modified_bo,   ///< f = u^3/3, alpha = 1 - |k|
  benjamin,      ///< f = u^2/2, alpha = 1 - |k| + tau k^2
};

/// Constructor parameters for catalog entries that have them.
struct EquationParams {
  double tau = 0.1;  ///< Benjamin surface-tension coefficient
  int exponent = 1;  ///< generalized KdV nonlinearity exponent q (f = u^(q+1)/(q+1))
};

/// Immutable description of one model equation on a fixed fundamental
/// wavelength L.
class Equation {
public:
  Equation(EquationKind kind, double length, EquationParams params = {});

  static Equation kdv(double length) { return {EquationKind::kdv, length}; }
  static Equation gkdv(double length, int exponent) { return {EquationKind::gkdv, length, {0.0, exponent}}; }
  static Equation whitham(double length) { return {EquationKind::whitham, length}; }
  static Equation benjamin_ono(double length) { return {EquationKind::benjamin_ono, length}; }
  static Equation modified_bo(double length) { return {EquationKind::modified_bo, length}; }
  static Equation benjamin(double length, double tau) { return {EquationKind::benjamin, length, {tau, 1}}; }

  /// Looks an equation up by catalog name ("kdv", "gkdv", "whitham",
  /// "benjamin-ono", "mbo", "benjamin"; a few aliases are accepted).
  static Equation from_name(std::string_view name, double length, EquationParams params = {});

  EquationKind kind() const noexcept { return kind_; }
  std::string name() const;
  double length() const noexcept { return length_; }
  const EquationParams& params() const noexcept { return params_; }

  /// Same equation on a different fundamental wavelength.
  Equation with_length(double length) const { return {kind_, length, params_}; }

  double symbol(double k) const;
  double flux(double u) const;
  double flux_prime(double u) const;
  /// F with F' = f and F(0) = 0.
  double flux_antideriv(double u) const;

  std::vector<double> flux(std::span<const double> u) const;
  std::vector<double> flux_prime(std::span<const double> u) const;

  /// Order of the zero of f at the origin.
  int zero_degree() const noexcept;
  /// f^(p)(0) / p!
  double flux_p_coeff() const noexcept;

private:
  EquationKind kind_;
  double length_;
  EquationParams params_;
};

} // namespace travwave
