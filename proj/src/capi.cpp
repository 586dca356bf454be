#include "travwave/travwave.h"

#include "travwave/config.hpp"
#include "travwave/continuation.hpp"
#include "travwave/error.hpp"
#include "travwave/evolution.hpp"
#include "travwave/pipeline.hpp"

#include <cstring>
#include <iostream>
#include <sstream>
#include <string>

struct tw_equation {
  travwave::Equation eq;
};

struct tw_branch {
  travwave::Branch branch;
  std::string termination;
};

namespace {

thread_local std::string last_error;

tw_status fail(tw_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Maps the library's exception hierarchy onto status codes.
template <class F>
tw_status guarded(F&& body) {
  using namespace travwave;
  try {
    last_error.clear();
    body();
    return TW_OK;
  } catch (const InvalidArgument& e) {
    return fail(TW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const NoConvergence& e) {
    return fail(TW_ERR_NO_CONVERGENCE, e.what());
  } catch (const SingularJacobian& e) {
    return fail(TW_ERR_SINGULAR_JACOBIAN, e.what());
  } catch (const BranchTerminated& e) {
    return fail(TW_ERR_BRANCH_TERMINATED, e.what());
  } catch (const ResonantMode& e) {
    return fail(TW_ERR_RESONANT_MODE, e.what());
  } catch (const BlowUp& e) {
    return fail(TW_ERR_BLOW_UP, e.what());
  } catch (const InsufficientData& e) {
    return fail(TW_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const NoExactSolution& e) {
    return fail(TW_ERR_NO_EXACT_SOLUTION, e.what());
  } catch (const ConfigError& e) {
    return fail(TW_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(TW_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(TW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TW_ERR_INTERNAL, "unknown error");
  }
}

travwave::BoundaryCondition to_boundary(tw_boundary bc, double level) {
  switch (bc) {
    case TW_BC_MEAN_ZERO: return travwave::BoundaryCondition::mean_zero();
    case TW_BC_HOMOGENEOUS: return travwave::BoundaryCondition::homogeneous();
    case TW_BC_SOLITARY: return travwave::BoundaryCondition::solitary();
    case TW_BC_CONST_LEVEL: return travwave::BoundaryCondition::const_level(level);
  }
  throw travwave::InvalidArgument("unknown boundary condition");
}

travwave::NavigationOptions to_options(const tw_navigation_options* opts) {
  travwave::NavigationOptions out;
  if (!opts) return out;
  out.step = opts->step;
  out.max_halvings = opts->max_halvings;
  out.initial_height = opts->initial_height;
  out.guess = opts->corrected_guess ? travwave::GuessKind::corrected : travwave::GuessKind::first_order;
  out.newton.tol = opts->newton_tol;
  out.newton.max_iters = opts->newton_max_iters;
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw travwave::InvalidArgument(what);
}

} // namespace

extern "C" {

const char* tw_version(void) { return "0.1.0"; }

const char* tw_last_error(void) { return last_error.c_str(); }

tw_status tw_equation_create(const char* name, double length, double tau, int exponent, tw_equation** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new tw_equation{travwave::Equation::from_name(name, length, {tau, exponent})};
  });
}

void tw_equation_destroy(tw_equation* eq) { delete eq; }

tw_status tw_equation_symbol(const tw_equation* eq, double k, double* out) {
  return guarded([&] {
    require(eq && out, "null argument");
    *out = eq->eq.symbol(k);
  });
}

tw_status tw_equation_flux(const tw_equation* eq, const double* u, size_t n, double* out) {
  return guarded([&] {
    require(eq && (n == 0 || (u && out)), "null argument");
    for (size_t i = 0; i < n; ++i) out[i] = eq->eq.flux(u[i]);
  });
}

tw_status tw_bifurcation_speed(const tw_equation* eq, double* out) {
  return guarded([&] {
    require(eq && out, "null argument");
    *out = travwave::bifurcation_speed(eq->eq);
  });
}

void tw_navigation_options_default(tw_navigation_options* opts) {
  if (!opts) return;
  const travwave::NavigationOptions d;
  opts->step = d.step;
  opts->max_halvings = d.max_halvings;
  opts->initial_height = d.initial_height;
  opts->corrected_guess = d.guess == travwave::GuessKind::corrected;
  opts->newton_tol = d.newton.tol;
  opts->newton_max_iters = d.newton.max_iters;
}

tw_status tw_branch_compute(const tw_equation* eq, size_t grid_size, tw_boundary bc, double level,
                            const tw_navigation_options* opts, int max_steps, double max_height, tw_branch** out) {
  return guarded([&] {
    require(eq && out, "null argument");
    require(grid_size >= 2, "grid size must be at least 2");
    require(max_steps >= 0, "max_steps must be nonnegative");
    const travwave::Discretization disc(eq->eq, travwave::Grid(eq->eq.length(), grid_size));
    std::optional<double> target;
    if (max_height > 0.0) target = max_height;
    auto branch = travwave::compute_branch(disc, to_boundary(bc, level), to_options(opts), max_steps, target);
    auto reason = travwave::to_string(branch.termination);
    *out = new tw_branch{std::move(branch), std::move(reason)};
  });
}

void tw_branch_destroy(tw_branch* branch) { delete branch; }

size_t tw_branch_size(const tw_branch* branch) { return branch ? branch->branch.points.size() : 0; }

size_t tw_branch_grid_size(const tw_branch* branch) { return branch ? branch->branch.grid_size : 0; }

const char* tw_branch_termination(const tw_branch* branch) { return branch ? branch->termination.c_str() : ""; }

tw_status tw_branch_point(const tw_branch* branch, size_t index, tw_point_info* out) {
  return guarded([&] {
    require(branch && out, "null argument");
    require(index < branch->branch.points.size(), "point index out of range");
    const auto& p = branch->branch.points[index];
    *out = {p.speed, p.height, p.b, p.theta, p.residual_norm, p.newton_iters};
  });
}

tw_status tw_branch_profile(const tw_branch* branch, size_t index, double* samples, size_t capacity) {
  return guarded([&] {
    require(branch && samples, "null argument");
    require(index < branch->branch.points.size(), "point index out of range");
    const auto s = branch->branch.points[index].wave.samples();
    require(capacity >= s.size(), "profile buffer too small");
    std::memcpy(samples, s.data(), s.size() * sizeof(double));
  });
}

tw_status tw_branch_refine(const tw_branch* branch, const tw_equation* eq, int doublings, tw_branch** out) {
  return guarded([&] {
    require(branch && eq && out, "null argument");
    require(doublings >= 0, "doublings must be nonnegative");
    auto refined = travwave::refine_branch(branch->branch, eq->eq, doublings);
    auto finest = std::move(refined.stages.back());
    auto reason = travwave::to_string(finest.termination);
    *out = new tw_branch{std::move(finest), std::move(reason)};
  });
}

tw_status tw_run_command(const char* command, const char* config_path, const char* out_dir, const char* guess,
                         const char* const* overrides, size_t n_overrides, int* exit_code) {
  if (!command || !exit_code || (n_overrides > 0 && !overrides)) return fail(TW_ERR_INVALID_ARGUMENT, "null argument");
  std::ostringstream log;
  try {
    last_error.clear();
    const travwave::Command cmd = travwave::parse_command(command);
    travwave::RunConfig cfg = config_path ? travwave::load_config(config_path) : travwave::RunConfig{};
    for (size_t i = 0; i < n_overrides; ++i) travwave::apply_override(cfg, overrides[i]);
    if (guess) cfg.navigation.guess = travwave::parse_guess(guess);
    if (out_dir) cfg.output_dir = out_dir;
    *exit_code = travwave::run_command(cmd, cfg, log);
  } catch (const travwave::ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    *exit_code = travwave::kExitConfig;
  } catch (const travwave::IoError& e) {
    log << "io error: " << e.what() << '\n';
    *exit_code = travwave::kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    *exit_code = travwave::kExitConfig;
  }
  std::cerr << log.str();
  if (*exit_code != 0) last_error = log.str();
  return TW_OK;
}

} // extern "C"
