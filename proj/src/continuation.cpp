#include "travwave/continuation.hpp"

#include "travwave/diagnostics.hpp"
#include "travwave/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace travwave {

ParamPoint direction(ParamPoint p1, ParamPoint p2) {
  const double dc = p2.speed - p1.speed;
  const double da = p2.height - p1.height;
  const double len = std::hypot(dc, da);
  if (!(len > 0.0)) throw InvalidArgument("direction: the two branch points coincide");
  return {dc / len, da / len};
}

ParamPoint predict(ParamPoint p2, ParamPoint d, double s) { return {p2.speed + s * d.speed, p2.height + s * d.height}; }

ParamPoint orthogonal(ParamPoint d) { return {-d.height, d.speed}; }

std::string to_string(Termination t) {
  switch (t) {
  case Termination::running: return "running";
  case Termination::max_steps: return "max-steps";
  case Termination::target_reached: return "target-reached";
  case Termination::crest_split: return "crest-split";
  case Termination::no_convergence: return "no-convergence";
  case Termination::singular_jacobian: return "singular-jacobian";
  }
  return "unknown";
}

std::pair<SolutionPoint, SolutionPoint> bootstrap(const Discretization& disc, const BoundaryCondition& bc,
                                                  const NavigationOptions& opts) {
  if (!(opts.initial_height > 0.0)) throw InvalidArgument("bootstrap waveheight must be positive");
  if (bc.kind == BoundaryCondition::Kind::const_level && bc.level != 0.0)
    throw InvalidArgument("bootstrap needs the zero state to be a solution; const_level must be 0");

  const double c0 = disc.multipliers()[1];
  SolutionPoint first{Wave::zero(disc.grid()), c0, 0.0, 0.0, 0.0, 0.0, 0};

  GuessKind kind = opts.guess;
  std::pair<Wave, double> guess = [&] {
    try {
      return stokes_guess(disc, opts.initial_height, kind);
    } catch (const ResonantMode&) {
      return stokes_guess(disc, opts.initial_height, GuessKind::first_order);
    }
  }();
  const auto frame = ContinuationFrame::fixed_height(guess.second, opts.initial_height);
  SolutionPoint second = newton_solve(disc, bc, frame, guess.first, 0.0, 0.0, opts.newton);
  return {std::move(first), std::move(second)};
}

StepResult continuation_step(const Discretization& disc, const BoundaryCondition& bc, const Branch& branch,
                             double step_size, const NavigationOptions& opts) {
  if (branch.points.size() < 2) throw InvalidArgument("continuation step needs two branch points");
  if (!(step_size > 0.0)) throw InvalidArgument("continuation step size must be positive");
  const SolutionPoint& prev = branch.points[branch.points.size() - 2];
  const SolutionPoint& last = branch.points.back();
  const ParamPoint d = direction({prev.speed, prev.height}, {last.speed, last.height});
  const ParamPoint perp = orthogonal(d);

  double s = step_size;
  std::string failure;
  bool singular = false;
  for (int halvings = 0; halvings <= opts.max_halvings; ++halvings, s *= 0.5) {
    const ParamPoint anchor = predict({last.speed, last.height}, d, s);
    const ContinuationFrame frame(anchor.speed, anchor.height, perp.speed, perp.height);

    Wave guess = last.wave;
    if (last.height != 0.0) {
      const double scale = anchor.height / last.height;
      for (double& v : guess.mutable_samples()) v *= scale;
    } else {
      guess = Wave::cosine_mode(disc.grid(), 1, 0.5 * anchor.height);
    }

    try {
      SolutionPoint point = newton_solve(disc, bc, frame, guess, last.b, 0.0, opts.newton);
      return {std::move(point), frame, d, s, halvings};
    } catch (const NoConvergence& e) {
      failure = e.what();
      singular = false;
    } catch (const SingularJacobian& e) {
      failure = e.what();
      singular = true;
    }
  }
  std::ostringstream msg;
  msg << (singular ? "singular-jacobian" : "no-convergence") << ": " << failure << " (minimum step " << 2.0 * s << ")";
  throw BranchTerminated(msg.str());
}

Navigator::Navigator(Discretization disc, BoundaryCondition bc, NavigationOptions opts)
  : disc_(std::move(disc)), bc_(bc), opts_(opts), step_size_(opts.step) {
  branch_.equation = disc_.equation().name();
  branch_.bc = bc_;
  branch_.grid_size = disc_.size();
  auto [first, second] = bootstrap(disc_, bc_, opts_);
  branch_.points.push_back(std::move(first));
  branch_.points.push_back(std::move(second));
  branch_.steps = {0.0, 0.0};
}

Navigator::Navigator(Discretization disc, BoundaryCondition bc, NavigationOptions opts, Branch branch)
  : disc_(std::move(disc)), bc_(bc), opts_(opts), branch_(std::move(branch)), step_size_(opts.step) {
  if (branch_.points.size() < 2) throw InvalidArgument("resumed branch needs at least two points");
  branch_.termination = Termination::running;
  branch_.detail.clear();
}

const StepResult& Navigator::step() {
  last_ = continuation_step(disc_, bc_, branch_, step_size_, opts_);
  if (last_->halvings > 0) {
    step_size_ = last_->step_used;
    streak_ = 0;
  }
  if (last_->point.newton_iters <= opts_.easy_iters) {
    if (++streak_ >= opts_.easy_streak && step_size_ < opts_.step) {
      step_size_ = std::min(2.0 * step_size_, opts_.step);
      streak_ = 0;
    }
  } else {
    streak_ = 0;
  }
  branch_.points.push_back(last_->point);
  branch_.steps.push_back(last_->step_used);
  return *last_;
}

const Branch& Navigator::run(int max_steps, std::optional<double> max_height) {
  branch_.termination = Termination::running;
  for (int i = 0; i < max_steps; ++i) {
    try {
      step();
    } catch (const BranchTerminated& e) {
      const std::string what = e.what();
      branch_.termination = what.rfind("singular", 0) == 0 ? Termination::singular_jacobian : Termination::no_convergence;
      branch_.detail = what;
      return branch_;
    }
    const SolutionPoint& p = branch_.points.back();
    if (max_height && p.height >= *max_height) {
      branch_.termination = Termination::target_reached;
      return branch_;
    }
    if (opts_.stop_on_crest_split && (crest_count(p.wave.samples()) > 1 || interpolant_crest_count(p.wave) > 1)) {
      branch_.termination = Termination::crest_split;
      return branch_;
    }
  }
  branch_.termination = Termination::max_steps;
  return branch_;
}

Branch compute_branch(const Discretization& disc, const BoundaryCondition& bc, const NavigationOptions& opts, int max_steps,
                      std::optional<double> max_height) {
  Navigator nav(disc, bc, opts);
  nav.run(max_steps, max_height);
  return nav.take_branch();
}

RefinedBranch refine_branch(const Branch& branch, const Equation& equation, int doublings, const NewtonOptions& newton) {
  if (doublings < 1) throw InvalidArgument("refinement needs at least one doubling");
  if (branch.points.empty()) throw InvalidArgument("cannot refine an empty branch");
  RefinedBranch out;
  out.stages.push_back(branch);
  for (int stage = 1; stage <= doublings; ++stage) {
    const Branch& coarse = out.stages.back();
    Branch fine = coarse;
    fine.grid_size = coarse.grid_size * 2;
    fine.failed_points.clear();
    const Discretization disc(equation, Grid(equation.length(), fine.grid_size));
    for (std::size_t i = 0; i < coarse.points.size(); ++i) {
      const SolutionPoint& p = coarse.points[i];
      Wave guess = refine(p.wave, 2);
      const auto frame = ContinuationFrame::fixed_height(p.speed, p.height);
      try {
        fine.points[i] = newton_solve(disc, branch.bc, frame, guess, p.b, 0.0, newton);
      } catch (const NoConvergence& e) {
        fine.points[i] = SolutionPoint{std::move(guess), p.speed, p.height, p.b, 0.0, e.last_residual(), -1};
        fine.failed_points.push_back(i);
      } catch (const SingularJacobian&) {
        fine.points[i] = SolutionPoint{std::move(guess), p.speed, p.height, p.b, 0.0,
                                       std::numeric_limits<double>::quiet_NaN(), -1};
        fine.failed_points.push_back(i);
      }
    }
    out.stages.push_back(std::move(fine));
  }
  return out;
}

} // namespace travwave
