#pragma once

#include "travwave/continuation.hpp"
#include "travwave/evolution.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace travwave {

/// Declarative run description. Parsed from an INI-like file with a fixed
/// schema (key reference in the README).
struct RunConfig {
  // [equation]
  std::string equation = "kdv";
  double length = 2.0 * 3.14159265358979323846;
  double tau = 0.1;
  int exponent = 1;

  // [discretization]
  std::size_t grid_size = 64;
  int doubling = 0;

  // [boundary]
  std::string boundary = "mean_zero";
  double level = 0.0;

  // [navigation]
  NavigationOptions navigation;
  int n_iter = 50;
  std::optional<double> max_height;

  // [evolution]
  std::string profile;
  std::string profile2;
  std::optional<double> separation;
  std::size_t evolution_size = 0;  ///< 0 -> 2N of the profile
  EvolutionConfig evolution;

  // [convergence]
  double exact_height = 1.2651;
  std::vector<std::size_t> convergence_sizes{32, 64, 128, 256, 512};
  std::size_t convergence_base = 128;

  // [input]
  std::string branch_dir;
  bool fits = true;

  // [output]
  std::string output_dir = "out";

  Equation make_equation() const;
  BoundaryCondition make_boundary() const;
};

/// Parses the text of a config file. Throws ConfigError with the line number
/// and key for malformed lines, unknown sections and unknown keys.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path);

/// Applies one `key=value` or `section.key=value` override.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Reals accept plain numbers and products/quotients with `pi`
/// (e.g. "2*pi", "4*pi/19", "pi/5").
double parse_real(std::string_view text);

GuessKind parse_guess(std::string_view text);

} // namespace travwave
