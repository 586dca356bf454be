#include "travwave/travwave.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

TEST_CASE("version and equations") {
  CHECK(std::strlen(tw_version()) > 0);

  tw_equation* eq = nullptr;
  REQUIRE(tw_equation_create("benjamin", 4 * std::numbers::pi / 19, 0.1, 1, &eq) == TW_OK);
  double c0 = 0.0;
  REQUIRE(tw_bifurcation_speed(eq, &c0) == TW_OK);
  CHECK(std::abs(c0 - 0.525) <= 1e-12);
  double a = 0.0;
  CHECK(tw_equation_symbol(eq, 10.0, &a) == TW_OK);
  CHECK(a == doctest::Approx(1.0));
  tw_equation_destroy(eq);

  REQUIRE(tw_equation_create("kdv", 2 * std::numbers::pi, 0.0, 1, &eq) == TW_OK);
  const double u[2] = {0.0, 2.0};
  double f[2] = {-1.0, -1.0};
  CHECK(tw_equation_flux(eq, u, 2, f) == TW_OK);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(3.0));
  tw_equation_destroy(eq);
}

TEST_CASE("errors come back as status codes") {
  tw_equation* eq = nullptr;
  CHECK(tw_equation_create("burgers", 1.0, 0.0, 1, &eq) == TW_ERR_INVALID_ARGUMENT);
  CHECK(eq == nullptr);
  CHECK(std::strstr(tw_last_error(), "burgers") != nullptr);
  CHECK(tw_equation_create("kdv", -1.0, 0.0, 1, &eq) == TW_ERR_INVALID_ARGUMENT);
  CHECK(tw_equation_create(nullptr, 1.0, 0.0, 1, &eq) == TW_ERR_INVALID_ARGUMENT);
  CHECK(tw_equation_symbol(nullptr, 1.0, nullptr) == TW_ERR_INVALID_ARGUMENT);
  tw_equation_destroy(nullptr);
  tw_branch_destroy(nullptr);

  // Homogeneous B at L = pi/5: the constant mode resonates with the first.
  REQUIRE(tw_equation_create("benjamin", std::numbers::pi / 5, 0.1, 1, &eq) == TW_OK);
  tw_navigation_options opts;
  tw_navigation_options_default(&opts);
  tw_branch* br = nullptr;
  CHECK(tw_branch_compute(eq, 32, TW_BC_HOMOGENEOUS, 0.0, &opts, 5, 0.0, &br) == TW_ERR_SINGULAR_JACOBIAN);
  CHECK(br == nullptr);
  tw_equation_destroy(eq);
}

TEST_CASE("branch computation through the C interface") {
  tw_equation* eq = nullptr;
  REQUIRE(tw_equation_create("kdv", 2 * std::numbers::pi, 0.0, 1, &eq) == TW_OK);
  tw_navigation_options opts;
  tw_navigation_options_default(&opts);
  CHECK(opts.step == 0.01);
  opts.step = 0.05;
  tw_branch* br = nullptr;
  REQUIRE(tw_branch_compute(eq, 32, TW_BC_MEAN_ZERO, 0.0, &opts, 10, 0.0, &br) == TW_OK);
  CHECK(tw_branch_size(br) == 12);
  CHECK(tw_branch_grid_size(br) == 32);
  CHECK(std::strcmp(tw_branch_termination(br), "max-steps") == 0);

  tw_point_info info;
  REQUIRE(tw_branch_point(br, 0, &info) == TW_OK);
  CHECK(info.speed == doctest::Approx(5.0 / 6.0));
  REQUIRE(tw_branch_point(br, 11, &info) == TW_OK);
  CHECK(info.height > 0.3);
  CHECK(info.residual_norm <= 1e-12);
  CHECK(tw_branch_point(br, 12, &info) == TW_ERR_INVALID_ARGUMENT);

  std::vector<double> s(32);
  REQUIRE(tw_branch_profile(br, 11, s.data(), s.size()) == TW_OK);
  CHECK(s.front() - s.back() == doctest::Approx(info.height));
  CHECK(tw_branch_profile(br, 11, s.data(), 8) == TW_ERR_INVALID_ARGUMENT);

  tw_branch* fine = nullptr;
  REQUIRE(tw_branch_refine(br, eq, 1, &fine) == TW_OK);
  CHECK(tw_branch_grid_size(fine) == 64);
  CHECK(tw_branch_size(fine) == 12);
  tw_point_info fi;
  REQUIRE(tw_branch_point(fine, 11, &fi) == TW_OK);
  CHECK(std::abs(fi.height - info.height) <= 1e-11);

  tw_branch_destroy(fine);
  tw_branch_destroy(br);
  tw_equation_destroy(eq);
}

TEST_CASE("subcommand runner") {
  int code = -1;
  CHECK(tw_run_command("plot", nullptr, nullptr, nullptr, nullptr, 0, &code) == TW_OK);
  CHECK(code == 1);
  const char* overrides[] = {"newton_tollerance=1e-9"};
  CHECK(tw_run_command("branch", nullptr, nullptr, nullptr, overrides, 1, &code) == TW_OK);
  CHECK(code == 1);
  CHECK(std::strstr(tw_last_error(), "newton_tollerance") != nullptr);
  CHECK(tw_run_command("branch", nullptr, nullptr, nullptr, nullptr, 0, nullptr) == TW_ERR_INVALID_ARGUMENT);
}
