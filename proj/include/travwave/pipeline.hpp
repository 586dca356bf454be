#pragma once

#include "travwave/config.hpp"

#include <ostream>
#include <string_view>
#include <vector>

namespace travwave {

enum class Command { branch, refine, evolve, converge, analyze };

/// Throws ConfigError for an unknown subcommand.
Command parse_command(std::string_view name);

/// Exit codes of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one subcommand and writes its artifacts under cfg.output_dir.
/// Never throws; errors are reported on `log` and mapped to an exit code.
int run_command(Command command, const RunConfig& cfg, std::ostream& log);

/// a sech^2(sqrt(3a/4) x), the solitary wave of speed 1 + a/2.
double kdv_solitary(double height, double x);

struct ConvergenceRow {
  std::size_t n = 0;
  double log10_linf = 0.0;
  double log10_l2 = 0.0;  ///< L^2 error per unit length (node RMS)
  double l2_ratio = 0.0;  ///< previous L^2 error / this one; NaN in the first row
};

/// Computed solitary waves of height cfg.exact_height against the exact
/// solution on every size in cfg.convergence_sizes. Throws NoExactSolution
/// unless the equation is KdV.
std::vector<ConvergenceRow> solitary_convergence(const RunConfig& cfg);

/// Initial field for `evolve`: the mirrored profile, or in pair mode the sum
/// of both profiles (trough levels removed) with the taller crest at L/4 and
/// the other `separation` further right.
PeriodicField evolution_initial_field(const RunConfig& cfg);

} // namespace travwave
