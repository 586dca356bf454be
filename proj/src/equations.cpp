#include "travwave/equations.hpp"

#include "travwave/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace travwave {

namespace {

// Below this |k| the Whitham symbol switches to its Taylor expansion so that
// the k = 0 mode never hits 0/0.
constexpr double kWhithamTaylorCutoff = 1e-4;

std::string normalized(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

} // namespace

Equation::Equation(EquationKind kind, double length, EquationParams params)
  : kind_(kind), length_(length), params_(params) {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("equation wavelength must be positive and finite");
  if (kind == EquationKind::gkdv && params.exponent < 1)
    throw InvalidArgument("generalized KdV exponent must be >= 1");
  if (kind == EquationKind::benjamin && !std::isfinite(params.tau))
    throw InvalidArgument("Benjamin tau must be finite");
}

Equation Equation::from_name(std::string_view name, double length, EquationParams params) {
  const std::string key = normalized(name);
  if (key == "kdv") return {EquationKind::kdv, length, params};
  if (key == "gkdv" || key == "generalizedkdv") return {EquationKind::gkdv, length, params};
  if (key == "whitham") return {EquationKind::whitham, length, params};
  if (key == "bo" || key == "benjaminono") return {EquationKind::benjamin_ono, length, params};
  if (key == "mbo" || key == "modifiedbo" || key == "modifiedbenjaminono") return {EquationKind::modified_bo, length, params};
  if (key == "benjamin") return {EquationKind::benjamin, length, params};
  throw InvalidArgument("unknown equation '" + std::string(name) + "'");
}

std::string Equation::name() const {
  switch (kind_) {
  case EquationKind::kdv: return "kdv";
  case EquationKind::gkdv: return "gkdv";
  case EquationKind::whitham: return "whitham";
  case EquationKind::benjamin_ono: return "benjamin-ono";
  case EquationKind::modified_bo: return "mbo";
  case EquationKind::benjamin: return "benjamin";
  }
  return "unknown";
}

double Equation::symbol(double k) const {
  const double ak = std::abs(k);
  switch (kind_) {
  case EquationKind::kdv: return 1.0 - ak * ak / 6.0;
  case EquationKind::gkdv: return 1.0 - ak * ak;
  case EquationKind::whitham:
    // Normalized gravity-wave dispersion (g = h0 = 1).
    if (ak < kWhithamTaylorCutoff) {
      const double k2 = ak * ak;
      return std::sqrt(1.0 - k2 / 3.0 + 2.0 * k2 * k2 / 15.0);
    }
    return std::sqrt(std::tanh(ak) / ak);
  case EquationKind::benjamin_ono:
  case EquationKind::modified_bo: return 1.0 - ak;
  case EquationKind::benjamin: return 1.0 - ak + params_.tau * ak * ak;
  }
  return 0.0;
}

double Equation::flux(double u) const {
  switch (kind_) {
  case EquationKind::kdv:
  case EquationKind::whitham: return 0.75 * u * u;
  case EquationKind::gkdv: return std::pow(u, params_.exponent + 1) / (params_.exponent + 1);
  case EquationKind::benjamin_ono:
  case EquationKind::benjamin: return 0.5 * u * u;
  case EquationKind::modified_bo: return u * u * u / 3.0;
  }
  return 0.0;
}

double Equation::flux_prime(double u) const {
  switch (kind_) {
  case EquationKind::kdv:
  case EquationKind::whitham: return 1.5 * u;
  case EquationKind::gkdv: return std::pow(u, params_.exponent);
  case EquationKind::benjamin_ono:
  case EquationKind::benjamin: return u;
  case EquationKind::modified_bo: return u * u;
  }
  return 0.0;
}

double Equation::flux_antideriv(double u) const {
  switch (kind_) {
  case EquationKind::kdv:
  case EquationKind::whitham: return 0.25 * u * u * u;
  case EquationKind::gkdv: {
    const int q = params_.exponent;
    return std::pow(u, q + 2) / ((q + 1.0) * (q + 2.0));
  }
  case EquationKind::benjamin_ono:
  case EquationKind::benjamin: return u * u * u / 6.0;
  case EquationKind::modified_bo: return u * u * u * u / 12.0;
  }
  return 0.0;
}

std::vector<double> Equation::flux(std::span<const double> u) const {
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(), [this](double v) { return flux(v); });
  return out;
}

std::vector<double> Equation::flux_prime(std::span<const double> u) const {
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(), [this](double v) { return flux_prime(v); });
  return out;
}

int Equation::zero_degree() const noexcept {
  switch (kind_) {
  case EquationKind::gkdv: return params_.exponent + 1;
  case EquationKind::modified_bo: return 3;
  default: return 2;
  }
}

double Equation::flux_p_coeff() const noexcept {
  switch (kind_) {
  case EquationKind::kdv:
  case EquationKind::whitham: return 0.75;
  case EquationKind::gkdv: return 1.0 / (params_.exponent + 1);
  case EquationKind::benjamin_ono:
  case EquationKind::benjamin: return 0.5;
  case EquationKind::modified_bo: return 1.0 / 3.0;
  }
  return 0.0;
}

} // namespace travwave
