#include "test_support.hpp"

#include "travwave/continuation.hpp"
#include "travwave/diagnostics.hpp"
#include "travwave/error.hpp"
#include "travwave/stokes.hpp"

#include <doctest.h>

using namespace travwave;
using testing::kPi;

TEST_CASE("direction, predictor and orthogonal") {
  auto d = direction({1.0, 0.0}, {1.1, 0.2});
  CHECK(d.speed == doctest::Approx(0.4472135955));
  CHECK(d.height == doctest::Approx(0.894427191));
  d = direction({1.0, 0.0}, {1.0, 0.5});
  CHECK(d.speed == 0.0);
  CHECK(d.height == 1.0);
  d = direction({0.9, 0.3}, {0.8, 0.35});
  CHECK(d.speed / d.height == doctest::Approx(-2.0));
  CHECK(d.speed < 0.0);
  CHECK_THROWS_AS(direction({1.0, 1.0}, {1.0, 1.0}), InvalidArgument);

  auto p = predict({1.0, 0.5}, {0.0, 1.0}, 0.1);
  CHECK(p.speed == 1.0);
  CHECK(p.height == doctest::Approx(0.6));
  p = predict({1.0, 0.5}, {0.0, 1.0}, 0.0);
  CHECK(p.height == 0.5);
  p = predict({0.9, 1.0}, {-0.6, 0.8}, 0.05);
  CHECK(p.speed == doctest::Approx(0.87));
  CHECK(p.height == doctest::Approx(1.04));

  auto o = orthogonal({0.0, 1.0});
  CHECK(o.speed == -1.0);
  CHECK(o.height == 0.0);
  o = orthogonal({0.6, 0.8});
  CHECK(o.speed == doctest::Approx(-0.8));
  CHECK(o.height == doctest::Approx(0.6));
  for (int i = 0; i < 100; ++i) {
    const auto v = testing::random_vector(2);
    const ParamPoint r{v[0], v[1]};
    const auto q = orthogonal(r);
    CHECK(std::abs(r.speed * q.speed + r.height * q.height) <= 1e-15);
  }
}

TEST_CASE("bootstrap starts at the bifurcation speed") {
  NavigationOptions opts;
  {
    const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 32));
    const auto [p1, p2] = bootstrap(disc, BoundaryCondition::mean_zero(), opts);
    CHECK(p1.speed == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(p1.height == 0.0);
    CHECK(std::abs(p2.height - 1e-3) <= 1e-12);
  }
  {
    const Discretization disc(Equation::whitham(2 * kPi), Grid(2 * kPi, 32));
    CHECK(bootstrap(disc, BoundaryCondition::homogeneous(), opts).first.speed ==
          doctest::Approx(std::sqrt(std::tanh(1.0))).epsilon(1e-14));
  }
  {
    const Discretization disc(Equation::benjamin(4 * kPi, 0.1), Grid(4 * kPi, 64));
    CHECK(std::abs(bootstrap(disc, BoundaryCondition::mean_zero(), opts).first.speed - 0.525) <= 1e-12);
  }
  opts.initial_height = 0.0;
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 16));
  CHECK_THROWS_AS(bootstrap(disc, BoundaryCondition::mean_zero(), opts), InvalidArgument);
}

TEST_CASE("KdV branch: monotone, converged, corrector orthogonal to the secant") {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 64));
  const auto bc = BoundaryCondition::mean_zero();
  NavigationOptions opts;
  Navigator nav(disc, bc, opts);
  for (int i = 0; i < 50; ++i) {
    const auto& b = nav.branch();
    const ParamPoint p1{b.points[b.points.size() - 2].speed, b.points[b.points.size() - 2].height};
    const ParamPoint p2{b.points.back().speed, b.points.back().height};
    const auto& r = nav.step();
    const ParamPoint p3{r.frame.anchor_speed, r.frame.anchor_height};
    const ParamPoint d = direction(p1, p2);
    const double dot = (r.point.speed - p3.speed) * d.speed + (r.point.height - p3.height) * d.height;
    CHECK(std::abs(dot) <= 1e-10);
    CHECK(r.point.residual_norm <= 1e-10);
  }
  const auto& pts = nav.branch().points;
  REQUIRE(pts.size() == 52);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].height > pts[i - 1].height);
    CHECK(std::hypot(pts[i].speed - pts[i - 1].speed, pts[i].height - pts[i - 1].height) > 0.0);
  }
}

TEST_CASE("small-amplitude speed correction is quadratic in the height") {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 32));
  const double c0 = bifurcation_speed(disc.equation());
  std::vector<double> a, dc;
  for (double h : {1e-3, 2e-3, 4e-3, 1e-2}) {
    const auto g = stokes_guess(disc, h, GuessKind::first_order);
    const auto p = newton_solve(disc, BoundaryCondition::mean_zero(), ContinuationFrame::fixed_height(g.second, h),
                                g.first, 0.0, 0.0);
    a.push_back(std::log(h));
    dc.push_back(std::log(std::abs(p.speed - c0)));
  }
  const double slope = (dc.back() - dc.front()) / (a.back() - a.front());
  CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Whitham branch turns in the speed") {
  const Discretization disc(Equation::whitham(2 * kPi), Grid(2 * kPi, 128));
  NavigationOptions opts;
  const auto branch = compute_branch(disc, BoundaryCondition::homogeneous(), opts, 90);
  const auto& pts = branch.points;
  REQUIRE(pts.size() > 10);
  CHECK(pts[2].speed < pts[1].speed);
  bool turned = false;
  for (std::size_t i = 2; i < pts.size(); ++i)
    if (pts[i].speed > pts[i - 1].speed && pts[i - 1].speed < pts[i - 2].speed) turned = true;
  CHECK(turned);
}

TEST_CASE("navigation stops at the requested height and is reproducible") {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 32));
  NavigationOptions opts;
  opts.step = 0.05;
  const auto a = compute_branch(disc, BoundaryCondition::mean_zero(), opts, 100, 0.4);
  CHECK(a.termination == Termination::target_reached);
  CHECK(a.points.back().height >= 0.4);
  const auto b = compute_branch(disc, BoundaryCondition::mean_zero(), opts, 100, 0.4);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].speed == b.points[i].speed);
    CHECK(std::equal(a.points[i].wave.samples().begin(), a.points[i].wave.samples().end(),
                     b.points[i].wave.samples().begin()));
  }
  const auto c = compute_branch(disc, BoundaryCondition::mean_zero(), opts, 3);
  CHECK(c.termination == Termination::max_steps);
  CHECK(c.points.size() == 5);
  CHECK(to_string(Termination::singular_jacobian) == "singular-jacobian");
}

TEST_CASE("step halving and termination") {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 32));
  NavigationOptions opts;
  opts.newton.max_iters = 2;
  opts.max_halvings = 2;
  Navigator nav(disc, BoundaryCondition::mean_zero(), opts);
  // A huge step with almost no Newton budget cannot succeed.
  CHECK_THROWS_AS(continuation_step(disc, BoundaryCondition::mean_zero(), nav.branch(), 5.0, opts), BranchTerminated);

  NavigationOptions ok;
  const auto r = continuation_step(disc, BoundaryCondition::mean_zero(), nav.branch(), 0.8, ok);
  CHECK(r.step_used <= 0.8);
  CHECK(r.step_used == doctest::Approx(0.8 / std::pow(2.0, r.halvings)));
}

TEST_CASE("grid-doubling refinement") {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, 32));
  NavigationOptions opts;
  opts.step = 0.1;
  const auto branch = compute_branch(disc, BoundaryCondition::mean_zero(), opts, 8);
  const auto refined = refine_branch(branch, disc.equation(), 2);
  REQUIRE(refined.stages.size() == 3);
  const auto& fine = refined.stages[1];
  CHECK(fine.grid_size == 64);
  CHECK(refined.finest().grid_size == 128);
  CHECK(fine.failed_points.empty());
  // The zero wave stays zero and keeps its parameters.
  CHECK(testing::max_abs(fine.points[0].wave.samples()) == 0.0);
  CHECK(fine.points[0].speed == branch.points[0].speed);
  for (std::size_t i = 1; i < fine.points.size(); ++i) {
    CHECK(fine.points[i].residual_norm <= 1e-11);
    CHECK(std::abs(fine.points[i].height - branch.points[i].height) <= 1e-11);
    // The waveheight is read at nodes L/(4N) off crest and trough, so the
    // speed at fixed node height moves by O(N^-2) under refinement.
    const double d1 = fine.points[i].speed - branch.points[i].speed;
    const double d2 = refined.finest().points[i].speed - fine.points[i].speed;
    if (std::abs(d1) > 1e-7) CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.1));
  }
  CHECK_THROWS_AS(refine_branch(branch, disc.equation(), 0), InvalidArgument);
}
