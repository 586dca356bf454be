#pragma once

#include "travwave/solver.hpp"
#include "travwave/stokes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace travwave {

/// A point (or direction) in the (speed, waveheight) parameter plane.
struct ParamPoint {
  double speed = 0.0;
  double height = 0.0;
};

/// Unit secant direction from p1 to p2. Throws InvalidArgument if p1 == p2.
ParamPoint direction(ParamPoint p1, ParamPoint p2);
/// p2 + s d.
ParamPoint predict(ParamPoint p2, ParamPoint d, double s);
/// 90 degree rotation (dc, da) -> (-da, dc).
ParamPoint orthogonal(ParamPoint d);

struct NavigationOptions {
  double step = 0.01;
  int max_halvings = 6;
  /// A solve taking at most this many Newton iterations counts as easy ...
  int easy_iters = 4;
  /// ... and this many easy solves in a row double a reduced step back up.
  int easy_streak = 3;
  double initial_height = 1e-3;
  GuessKind guess = GuessKind::first_order;
  /// End the run at the first profile with more than one crest.
  bool stop_on_crest_split = false;
  NewtonOptions newton;
};

enum class Termination { running, max_steps, target_reached, crest_split, no_convergence, singular_jacobian };
std::string to_string(Termination t);

struct Branch {
  std::string equation;
  BoundaryCondition bc;
  std::size_t grid_size = 0;
  std::vector<SolutionPoint> points;
  /// Step size that produced each point (0 for the bootstrap pair).
  std::vector<double> steps;
  /// Indices of points whose refinement solve failed.
  std::vector<std::size_t> failed_points;
  Termination termination = Termination::running;
  std::string detail;
};

/// P1 = (c0, 0) with the zero wave and P2 solved at fixed waveheight a0 with
/// the speed free.
std::pair<SolutionPoint, SolutionPoint> bootstrap(const Discretization& disc, const BoundaryCondition& bc,
                                                  const NavigationOptions& opts);

/// Result of one predictor/corrector step.
struct StepResult {
  SolutionPoint point;
  ContinuationFrame frame;
  ParamPoint direction;
  double step_used = 0.0;
  int halvings = 0;
};

/// One continuation step from the last two points of `branch` with initial
/// step `step_size`, halving on failure. Throws BranchTerminated.
StepResult continuation_step(const Discretization& disc, const BoundaryCondition& bc, const Branch& branch,
                             double step_size, const NavigationOptions& opts);

/// Stateful driver: owns the branch and the adaptive step size.
class Navigator {
public:
  Navigator(Discretization disc, BoundaryCondition bc, NavigationOptions opts);
  /// Resumes an existing branch (at least two points).
  Navigator(Discretization disc, BoundaryCondition bc, NavigationOptions opts, Branch branch);

  const StepResult& step();
  /// Runs up to `max_steps` steps, stopping early once the waveheight
  /// reaches `max_height`. Sets the branch termination reason and never
  /// throws BranchTerminated.
  const Branch& run(int max_steps, std::optional<double> max_height = {});

  const Branch& branch() const noexcept { return branch_; }
  Branch take_branch() { return std::move(branch_); }
  double step_size() const noexcept { return step_size_; }
  const Discretization& discretization() const noexcept { return disc_; }

private:
  Discretization disc_;
  BoundaryCondition bc_;
  NavigationOptions opts_;
  Branch branch_;
  double step_size_;
  int streak_ = 0;
  std::optional<StepResult> last_;
};

/// Convenience: bootstrap and run.
Branch compute_branch(const Discretization& disc, const BoundaryCondition& bc, const NavigationOptions& opts, int max_steps,
                      std::optional<double> max_height = {});

/// Solution branches on N, 2N, ..., 2^D N points.
struct RefinedBranch {
  std::vector<Branch> stages;
  const Branch& finest() const { return stages.back(); }
};

/// Refines every point `doublings` times: spectral zero-padding followed by a
/// solve anchored at the point's own (c, a) with the waveheight held fixed.
RefinedBranch refine_branch(const Branch& branch, const Equation& equation, int doublings, const NewtonOptions& newton = {});

} // namespace travwave
