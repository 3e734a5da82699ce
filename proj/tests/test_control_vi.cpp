#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ectrl/assembly.hpp"
#include "ectrl/control_vi.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/selfcheck.hpp"
#include "ectrl/targets.hpp"
#include "ectrl/unconstrained.hpp"
#include "helpers.hpp"

using namespace ectrl;

namespace {

const ScalarField kU1 = [](double x, double y) {
  return std::sin(M_PI * x) * std::sin(M_PI * y);
};

} // namespace

TEST_CASE("inactive bounds reduce to the unconstrained solve with w = 0") {
  const auto mesh = build_structured_mesh(8);
  const double rho = mesh.h * mesh.h;
  const auto sol = solve_control_constrained(
      mesh, rho, kU1, [](double, double) { return -1e9; },
      [](double, double) { return 1e9; });
  CHECK(sol.report.converged);
  CHECK(sol.report.iterations == 1);
  for (double v : sol.w) {
    CHECK(v == 0.0);
  }
  const auto unconstrained = solve_unconstrained(mesh, rho, kU1);
  CHECK(test_helpers::max_abs_diff(sol.u, unconstrained) < 1e-12);
}

TEST_CASE("active-set solution matches the exhaustive enumeration oracle") {
  CHECK(selfcheck::control_oracle_deviation(4, 3, 4711) < 1e-8);
}

TEST_CASE("f1 bounds at n=32: flux feasibility and complementarity") {
  const auto mesh = build_structured_mesh(32);
  const double rho = mesh.h * mesh.h;
  const auto preset = preset_constraints("f1");
  const auto sol = solve_control_constrained(mesh, rho, kU1, preset.lower, preset.upper);
  REQUIRE(sol.report.converged);
  CHECK(!sol.active_plus.empty()); // the halved control bound must clip

  const double tol = sol.report.tol;
  for (std::size_t k = 0; k < sol.flux.size(); ++k) {
    CHECK(sol.flux[k] >= sol.f_minus[k] - tol);
    CHECK(sol.flux[k] <= sol.f_plus[k] + tol);
  }
  const double w_scale = 1.0 + test_helpers::max_abs(sol.w);
  CHECK(control_complementarity_residual(sol) <= 1e-8 * w_scale);

  // every index satisfies exactly one of the three complementarity cases
  for (std::size_t k = 0; k < sol.flux.size(); ++k) {
    const bool inactive = std::abs(sol.w[k]) == 0.0 && sol.flux[k] >= sol.f_minus[k] - tol &&
                          sol.flux[k] <= sol.f_plus[k] + tol;
    const bool upper = std::abs(sol.flux[k] - sol.f_plus[k]) <= tol && sol.w[k] <= tol;
    const bool lower = std::abs(sol.flux[k] - sol.f_minus[k]) <= tol && sol.w[k] >= -tol;
    CHECK((inactive || upper || lower));
  }

  // stationarity: (M + rho K) u - K w - load = 0 in the max norm
  const auto mass = restrict_interior(assemble_mass(mesh), mesh);
  const auto stiffness = restrict_interior(assemble_stiffness(mesh), mesh);
  const auto system = SparseSymMatrix::add_scaled(mass, rho, stiffness);
  const auto load =
      restrict_interior(assemble_load(mesh, kU1, QuadratureRule::degree5()), mesh);
  const auto su = system.apply(sol.u_interior);
  const auto kw = stiffness.apply(sol.w);
  double residual = 0.0;
  for (std::size_t k = 0; k < load.size(); ++k) {
    residual = std::max(residual, std::abs(su[k] - kw[k] - load[k]));
  }
  CHECK(residual <= 1e-8 * (1.0 + test_helpers::max_abs(load)));
}

TEST_CASE("complementarity residual of a constructed violation is positive") {
  ControlVISolution fake;
  fake.flux = {2.0};
  fake.w = {0.5}; // positive multiplier with flux above the upper bound
  fake.f_minus = {-1.0};
  fake.f_plus = {1.0};
  fake.report.c = 1.0;
  CHECK(control_complementarity_residual(fake) > 0.1);
}

TEST_CASE("reversed bounds are rejected, equal bounds pin the flux") {
  const auto mesh = build_structured_mesh(4);
  CHECK_THROWS_AS(solve_control_constrained(mesh, 0.1, kU1,
                                            [](double, double) { return 1.0; },
                                            [](double, double) { return -1.0; }),
                  std::invalid_argument);

  // equal zero bounds force K u = 0, i.e. the zero state
  const auto sol = solve_control_constrained(mesh, 0.1, kU1,
                                             [](double, double) { return 0.0; },
                                             [](double, double) { return 0.0; });
  REQUIRE(sol.report.converged);
  CHECK(test_helpers::max_abs(sol.u) < 1e-12);
}

TEST_CASE("dense and banded saddle paths agree") {
  const auto mesh = build_structured_mesh(6); // 25 interior nodes
  const double rho = mesh.h * mesh.h;
  const auto preset = preset_constraints("f1");

  ControlVIOptions dense_path;
  dense_path.dense_threshold = 500;
  ControlVIOptions banded_path;
  banded_path.dense_threshold = 0;

  const auto a =
      solve_control_constrained(mesh, rho, kU1, preset.lower, preset.upper, dense_path);
  const auto b =
      solve_control_constrained(mesh, rho, kU1, preset.lower, preset.upper, banded_path);
  REQUIRE(a.report.converged);
  REQUIRE(b.report.converged);
  CHECK(test_helpers::max_abs_diff(a.u, b.u) < 1e-10);
  CHECK(test_helpers::max_abs_diff(a.w, b.w) < 1e-10);
}

TEST_CASE("converged solutions are independent of c") {
  const auto mesh = build_structured_mesh(8);
  const double rho = mesh.h * mesh.h;
  const auto preset = preset_constraints("f1");

  ControlVIOptions options;
  options.c = 1.0;
  const auto ref =
      solve_control_constrained(mesh, rho, kU1, preset.lower, preset.upper, options);
  REQUIRE(ref.report.converged);
  for (double c : {0.1, 100.0}) {
    options.c = c;
    const auto other =
        solve_control_constrained(mesh, rho, kU1, preset.lower, preset.upper, options);
    REQUIRE(other.report.converged);
    CHECK(test_helpers::max_abs_diff(ref.u, other.u) < 1e-8);
  }
}
