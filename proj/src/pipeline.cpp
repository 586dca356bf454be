#include "travwave/pipeline.hpp"

#include "travwave/diagnostics.hpp"
#include "travwave/error.hpp"
#include "travwave/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace travwave {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_branch_artifacts(const fs::path& dir, const Branch& branch, const Equation& equation, bool fits) {
  io::write_branch(dir, branch);
  const BranchReport report = analyze_branch(branch, equation, fits);
  io::write_text(dir / "report.json", io::branch_report_json(branch, report));
  io::write_text(dir / "summary.csv", io::summary_csv(branch, report));
  io::write_text(dir / "branch.svg", io::branch_svg(branch, report));
}

std::string stage_name(std::size_t size) { return "refined_N" + std::to_string(size); }

bool terminated_early(Termination t) { return t == Termination::no_convergence || t == Termination::singular_jacobian; }

// Refines `branch` and writes each refined stage next to the base artifacts.
// Returns the number of failed refinement solves.
std::size_t write_refinement(const fs::path& out, const Branch& branch, const Equation& equation, const RunConfig& cfg,
                             json& run) {
  const RefinedBranch refined = refine_branch(branch, equation, cfg.doubling, cfg.navigation.newton);
  std::size_t failed = 0;
  json stages = json::array();
  for (std::size_t s = 1; s < refined.stages.size(); ++s) {
    const Branch& stage = refined.stages[s];
    write_branch_artifacts(out / stage_name(stage.grid_size), stage, equation, cfg.fits);
    failed += stage.failed_points.size();
    stages.push_back({{"grid_N", stage.grid_size}, {"dir", stage_name(stage.grid_size)}, {"failed_points", stage.failed_points}});
  }
  run["refinement"] = std::move(stages);
  return failed;
}

int run_branch(const RunConfig& cfg, std::ostream& log) {
  const Equation equation = cfg.make_equation();
  const BoundaryCondition bc = cfg.make_boundary();
  const Discretization disc(equation, Grid(equation.length(), cfg.grid_size));
  Navigator nav(disc, bc, cfg.navigation);
  nav.run(cfg.n_iter, cfg.max_height);
  const Branch branch = nav.take_branch();

  const fs::path out = cfg.output_dir;
  write_branch_artifacts(out, branch, equation, cfg.fits);
  json run = {
    {"command", "branch"}, {"equation", branch.equation}, {"L", equation.length()}, {"grid_N", branch.grid_size},
    {"boundary", bc.name()}, {"points", branch.points.size()}, {"termination", to_string(branch.termination)},
    {"detail", branch.detail},
  };
  std::size_t failed = 0;
  if (cfg.doubling > 0) failed = write_refinement(out, branch, equation, cfg, run);
  io::write_text(out / "run.json", run.dump(2) + "\n");

  log << "branch: " << branch.points.size() << " points, termination " << to_string(branch.termination) << '\n';
  if (terminated_early(branch.termination)) {
    log << "branch terminated early: " << branch.detail << '\n';
    return kExitNumerical;
  }
  if (failed > 0) {
    log << "refinement failed at " << failed << " points\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_refine(const RunConfig& cfg, std::ostream& log) {
  if (cfg.branch_dir.empty()) throw ConfigError("refine needs key 'input.branch_dir'");
  if (cfg.doubling < 1) throw ConfigError("refine needs key 'discretization.doubling' >= 1");
  const Equation equation = cfg.make_equation();
  const Branch branch = io::read_branch(cfg.branch_dir, equation, cfg.make_boundary());
  const fs::path out = cfg.output_dir;
  json run = {{"command", "refine"}, {"input", cfg.branch_dir}, {"equation", branch.equation}, {"grid_N", branch.grid_size}};
  const std::size_t failed = write_refinement(out, branch, equation, cfg, run);
  io::write_text(out / "run.json", run.dump(2) + "\n");
  log << "refine: " << branch.points.size() << " points, " << failed << " failed solves\n";
  return failed > 0 ? kExitNumerical : kExitOk;
}

int run_analyze(const RunConfig& cfg, std::ostream& log) {
  if (cfg.branch_dir.empty()) throw ConfigError("analyze needs key 'input.branch_dir'");
  const Equation equation = cfg.make_equation();
  const Branch branch = io::read_branch(cfg.branch_dir, equation, cfg.make_boundary());
  const BranchReport report = analyze_branch(branch, equation, cfg.fits);
  const fs::path out = cfg.output_dir;
  io::write_text(out / "report.json", io::branch_report_json(branch, report));
  io::write_text(out / "summary.csv", io::summary_csv(branch, report));
  io::write_text(out / "branch.svg", io::branch_svg(branch, report));
  log << "analyze: " << branch.points.size() << " points\n";
  return kExitOk;
}

double relative_change(double value, double reference) {
  const double diff = std::abs(value - reference);
  return reference != 0.0 ? diff / std::abs(reference) : diff;
}

json evolution_report(const Trajectory& traj) {
  const Conserved first = conserved(traj.front().field);
  double mass_drift = 0.0, momentum_drift = 0.0;
  for (const auto& snap : traj) {
    const Conserved c = conserved(snap.field);
    mass_drift = std::max(mass_drift, relative_change(c.mass, first.mass));
    momentum_drift = std::max(momentum_drift, relative_change(c.momentum, first.momentum));
  }
  const Conserved last = conserved(traj.back().field);
  const ShapeDeviation dev = shape_deviation(traj.back().field, traj.front().field);
  return {
    {"M", traj.front().field.size()}, {"t_final", traj.back().t}, {"snapshots", traj.size()},
    {"mass_initial", number(first.mass)}, {"mass_final", number(last.mass)}, {"mass_drift", number(mass_drift)},
    {"momentum_initial", number(first.momentum)}, {"momentum_final", number(last.momentum)},
    {"momentum_drift", number(momentum_drift)},
    {"shape_deviation", {{"shift", number(dev.shift)}, {"relative_linf", number(dev.relative_linf)}}},
    {"crests_initial", periodic_crest_count(traj.front().field.samples(), 0.05)},
    {"crests_final", periodic_crest_count(traj.back().field.samples(), 0.05)},
  };
}

int run_evolve(const RunConfig& cfg, std::ostream& log) {
  const Equation equation = cfg.make_equation();
  const PeriodicField initial = evolution_initial_field(cfg);
  const fs::path out = cfg.output_dir;
  try {
    const Trajectory traj = evolve(equation, initial, cfg.evolution);
    io::write_trajectory(out, traj);
    json report = evolution_report(traj);
    report["blow_up_time"] = nullptr;
    io::write_text(out / "evolution.json", report.dump(2) + "\n");
    log << "evolve: " << traj.size() << " snapshots, shape deviation "
        << report["shape_deviation"]["relative_linf"].get<double>() << '\n';
    return kExitOk;
  } catch (const BlowUp& e) {
    io::write_trajectory(out, e.trajectory());
    json report = e.trajectory().empty() ? json::object() : evolution_report(e.trajectory());
    report["blow_up_time"] = e.time();
    io::write_text(out / "evolution.json", report.dump(2) + "\n");
    log << "evolve: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run_converge(const RunConfig& cfg, std::ostream& log) {
  const auto rows = solitary_convergence(cfg);
  std::ostringstream csv;
  csv << "N,log10_linf,log10_l2,l2_ratio\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << io::format_double(r.log10_linf) << ',' << io::format_double(r.log10_l2) << ',';
    if (std::isfinite(r.l2_ratio)) csv << io::format_double(r.l2_ratio);
    csv << '\n';
  }
  io::write_text(fs::path(cfg.output_dir) / "convergence.csv", csv.str());
  for (const auto& r : rows) log << "N = " << r.n << ": log10 Linf = " << r.log10_linf << '\n';
  return kExitOk;
}

} // namespace

Command parse_command(std::string_view name) {
  if (name == "branch") return Command::branch;
  if (name == "refine") return Command::refine;
  if (name == "evolve") return Command::evolve;
  if (name == "converge") return Command::converge;
  if (name == "analyze") return Command::analyze;
  throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

int run_command(Command command, const RunConfig& cfg, std::ostream& log) {
  try {
    switch (command) {
      case Command::branch: return run_branch(cfg, log);
      case Command::refine: return run_refine(cfg, log);
      case Command::evolve: return run_evolve(cfg, log);
      case Command::converge: return run_converge(cfg, log);
      case Command::analyze: return run_analyze(cfg, log);
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    log << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NoExactSolution& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    log << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

double kdv_solitary(double height, double x) {
  const double s = 1.0 / std::cosh(std::sqrt(0.75 * height) * x);
  return height * s * s;
}

std::vector<ConvergenceRow> solitary_convergence(const RunConfig& cfg) {
  const Equation equation = cfg.make_equation();
  if (equation.kind() != EquationKind::kdv)
    throw NoExactSolution("no exact solution is registered for '" + equation.name() + "'");
  const double a = cfg.exact_height;
  const BoundaryCondition bc = BoundaryCondition::solitary();

  // Continue from the bifurcation point up to the target height on the base
  // grid. The comparison solves then hold the speed at 1 + a/2: the discrete
  // waveheight is read at the first node, half a cell off the crest, and
  // pinning it would leave an O(h^2) mismatch with the exact profile.
  const Discretization base(equation, Grid(equation.length(), cfg.convergence_base));
  Navigator nav(base, bc, cfg.navigation);
  const Branch& branch = nav.run(cfg.n_iter, a);
  const SolutionPoint& last = branch.points.back();
  if (last.height < a) {
    std::ostringstream msg;
    msg << "branch stopped at waveheight " << last.height << " below the target " << a << " ("
        << to_string(branch.termination) << ")";
    throw BranchTerminated(msg.str());
  }
  const ContinuationFrame fixed_speed(1.0 + 0.5 * a, last.height, 0.0, 1.0);
  const SolutionPoint pinned = newton_solve(base, bc, fixed_speed, last.wave, last.b, 0.0, cfg.navigation.newton);

  std::vector<ConvergenceRow> rows;
  double prev_l2 = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n : cfg.convergence_sizes) {
    const Discretization disc = base.with_size(n);
    const SolutionPoint p =
      newton_solve(disc, bc, fixed_speed, resample(pinned.wave, n), pinned.b, pinned.theta, cfg.navigation.newton);
    const auto x = p.wave.grid().nodes();
    const auto phi = p.wave.samples();
    double linf = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::abs(phi[i] - kdv_solitary(a, x[i]));
      linf = std::max(linf, e);
      sum += e * e;
    }
    // L^2 norm per unit length, i.e. the root-mean-square over the nodes.
    const double l2 = std::sqrt(sum / static_cast<double>(n));
    rows.push_back({n, std::log10(linf), std::log10(l2), prev_l2 / l2});
    prev_l2 = l2;
  }
  return rows;
}

PeriodicField evolution_initial_field(const RunConfig& cfg) {
  if (cfg.profile.empty()) throw ConfigError("evolve needs key 'evolution.profile'");
  const double length = cfg.length;
  const Wave first = io::read_profile(cfg.profile, length);
  const std::size_t m = cfg.evolution_size != 0 ? cfg.evolution_size : 2 * first.size();
  if (m % 2 != 0) throw ConfigError("key 'evolution.M' must be even");
  if (cfg.profile2.empty()) return mirror_to_full(first, m);

  const Wave second = io::read_profile(cfg.profile2, length);
  auto leveled = [m](const Wave& w) {
    const PeriodicField f = mirror_to_full(w, m);
    std::vector<double> s(f.samples().begin(), f.samples().end());
    const double trough = w.samples().back();
    for (double& v : s) v -= trough;
    return PeriodicField(f.length(), std::move(s));
  };
  PeriodicField tall = leveled(first), short_ = leveled(second);
  if (short_.max_abs() > tall.max_abs()) std::swap(tall, short_);
  const double separation = cfg.separation.value_or(0.5 * length);
  return shifted(tall, 0.25 * length) + shifted(short_, 0.25 * length + separation);
}

} // namespace travwave
