#include "test_support.hpp"

#include "travwave/continuation.hpp"
#include "travwave/error.hpp"
#include "travwave/evolution.hpp"

#include <doctest.h>

using namespace travwave;
using testing::kPi;

namespace {

PeriodicField full_cosine(double length, std::size_t m, double amp, int mode = 1) {
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i)
    s[i] = amp * std::cos(2 * kPi * mode * static_cast<double>(i) / static_cast<double>(m));
  return {length, s};
}

SolutionPoint kdv_wave(std::size_t n, double height) {
  const Discretization disc(Equation::kdv(2 * kPi), Grid(2 * kPi, n));
  NavigationOptions opts;
  opts.step = 0.05;
  const auto b = compute_branch(disc, BoundaryCondition::mean_zero(), opts, 200, height);
  const auto& last = b.points.back();
  return newton_solve(disc, BoundaryCondition::mean_zero(), ContinuationFrame::fixed_height(last.speed, height),
                      last.wave, last.b, 0.0);
}

double max_diff(const PeriodicField& a, const PeriodicField& b) {
  return testing::max_abs_diff(a.samples(), b.samples());
}

} // namespace

TEST_CASE("mirroring to the full period") {
  const Grid g(2 * kPi, 16);
  const PeriodicField c = mirror_to_full(Wave(g, std::vector<double>(16, 0.7)));
  CHECK(c.size() == 32);
  for (double v : c.samples()) CHECK(v == doctest::Approx(0.7));

  const PeriodicField m = mirror_to_full(Wave::cosine_mode(g, 1));
  CHECK(max_diff(m, full_cosine(2 * kPi, 32, 1.0)) <= 1e-13);

  const PeriodicField r = mirror_to_full(Wave(g, testing::random_vector(16)), 64);
  for (std::size_t i = 1; i < 64; ++i) CHECK(std::abs(r.samples()[i] - r.samples()[64 - i]) <= 1e-12);
}

TEST_CASE("conserved quantities") {
  const auto z = conserved(PeriodicField::zero(3.0, 16));
  CHECK(z.mass == 0.0);
  CHECK(z.momentum == 0.0);
  const auto c = conserved(full_cosine(5.0, 64, 1.0));
  CHECK(std::abs(c.mass) <= 1e-14);
  CHECK(c.momentum == doctest::Approx(5.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("shift and shape deviation") {
  const PeriodicField u = full_cosine(2 * kPi, 64, 1.0);
  const PeriodicField s = shifted(u, 0.3);
  for (std::size_t i = 0; i < 64; ++i) {
    const double x = 2 * kPi * static_cast<double>(i) / 64.0;
    CHECK(s.samples()[i] == doctest::Approx(std::cos(x - 0.3)));
  }
  const auto dev = shape_deviation(s, u);
  CHECK(dev.shift == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(dev.relative_linf <= 1e-8);
  CHECK_THROWS_AS(shape_deviation(u, full_cosine(2 * kPi, 32, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(u + full_cosine(3.0, 64, 1.0), InvalidArgument);
}

TEST_CASE("zero stays zero and linear waves propagate exactly") {
  const auto eq = Equation::kdv(2 * kPi);
  EvolutionConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.snapshot_stride = 25;
  const auto traj = evolve(eq, PeriodicField::zero(2 * kPi, 64), cfg);
  REQUIRE(traj.size() == 5);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.back().t == 1.0);
  for (const auto& s : traj) CHECK(s.field.max_abs() == 0.0);

  // Tiny amplitude: the flux term is negligible and the mode travels at alpha(2).
  const double amp = 1e-9;
  const auto lin = evolve(eq, full_cosine(2 * kPi, 64, amp, 2), cfg);
  const auto expected = shifted(full_cosine(2 * kPi, 64, amp, 2), eq.symbol(2.0) * 1.0);
  CHECK(max_diff(lin.back().field, expected) <= 1e-8 * amp);
}

TEST_CASE("traveling wave, conservation and temporal order") {
  const auto p = kdv_wave(64, 0.5);
  const auto eq = Equation::kdv(2 * kPi);
  const PeriodicField u0 = mirror_to_full(p.wave);
  const double period = 2 * kPi / p.speed;
  auto run = [&](double dt) {
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.t_end = period;
    cfg.snapshot_stride = 50;
    return evolve(eq, u0, cfg);
  };
  const auto ref = run(0.02 / 8).back().field;
  const auto traj = run(0.02);
  const auto half = run(0.01).back().field;
  const double ratio = max_diff(traj.back().field, ref) / max_diff(half, ref);
  CHECK(ratio >= 16 * 0.7);
  CHECK(ratio <= 16 * 1.3);

  CHECK(shape_deviation(ref, u0).relative_linf <= 1e-6);
  // Invariants at the reference step, where time error is negligible.
  const auto c0 = conserved(u0);
  for (const auto& s : run(0.02 / 8)) {
    const auto c = conserved(s.field);
    CHECK(std::abs(c.mass - c0.mass) <= 1e-10 * std::max(1.0, std::abs(c0.mass)));
    CHECK(std::abs(c.momentum - c0.momentum) <= 1e-10 * c0.momentum);
  }
}

TEST_CASE("default step and blow-up") {
  const auto kdv = Equation::kdv(2 * kPi);
  const auto u = full_cosine(2 * kPi, 64, 2.0);
  // k_max = 32, max|f'(u)| = 3.
  CHECK(default_time_step(kdv, u) == doctest::Approx(0.5 / (32.0 * 3.0)));
  const auto w = Equation::whitham(2 * kPi);
  double rate = 0.0;
  for (int j = 0; j <= 32; ++j) rate = std::max(rate, std::abs(j * w.symbol(j)));
  CHECK(default_time_step(w, PeriodicField::zero(2 * kPi, 64)) == doctest::Approx(0.5 / rate));

  // Without dealiasing and with a step far beyond the stability limit the
  // explicit flux term explodes.
  EvolutionConfig cfg;
  cfg.dt = 0.5;
  cfg.t_end = 500.0;
  cfg.dealias = false;
  cfg.snapshot_stride = 10;
  try {
    evolve(kdv, u, cfg);
    FAIL("expected BlowUp");
  } catch (const BlowUp& e) {
    CHECK(e.time() > 0.0);
    CHECK_FALSE(e.trajectory().empty());
    CHECK(e.trajectory().front().t == 0.0);
  }

  cfg.t_end = -1.0;
  CHECK_THROWS_AS(evolve(kdv, u, cfg), InvalidArgument);
}

TEST_CASE("cubic flux keeps momentum with its alias-free truncation") {
  const auto eq = Equation::modified_bo(20.0);
  // Two periodic Lorentzian-like crests, band-limited below M/4 so the
  // state lies in the retained band.
  std::vector<double> s(256, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = 2 * kPi * static_cast<double>(i) / 256.0;
    for (int j = 1; j < 60; ++j) s[i] += 0.3 * std::pow(0.8, j) * std::cos(j * x) + 0.15 * std::pow(0.85, j) * std::cos(j * (x - 1.5));
  }
  const PeriodicField u0(20.0, s);
  EvolutionConfig cfg;
  cfg.dt = 2.5e-4;
  cfg.t_end = 2.0;
  cfg.snapshot_stride = 800;
  const auto traj = evolve(eq, u0, cfg);
  const auto c0 = conserved(u0);
  for (const auto& snap : traj) CHECK(std::abs(conserved(snap.field).momentum - c0.momentum) <= 1e-10 * c0.momentum);
}
