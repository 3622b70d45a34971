#include <doctest.h>

#include <cmath>

#include "shellsym/interp.hpp"
#include "shellsym/verify.hpp"
#include "support.hpp"

using namespace shellsym;

namespace {

const MaterialParams unit{};

struct Solved {
  Problem problem;
  SolveResult result;
  ExtendedField w, phi;
};

Solved solve_vk(const ShellSpec& s, int points, BoundaryConditions bc = BoundaryConditions::homogeneous()) {
  const Grid g = Grid::with_points(s.domain, points);
  Problem p = make_vonkarman(s, unit, g, bc, DataMode::symbolic);
  SolveResult r = newton_solve(p);
  REQUIRE(r.report.converged);
  ExtendedField w = extend(r.w, p.w_bc), phi = extend(r.phi, p.phi_bc);
  return {std::move(p), std::move(r), std::move(w), std::move(phi)};
}

}  // namespace

TEST_CASE("equivalence of the Marguerre and von Karman solves") {
  SUBCASE("plate: identical discrete systems") {
    ShellSpec s{parse("0"), parse("1"), {0, 1, 0, 1}, 0.2};
    const auto r = verify_equivalence(s, unit, Grid::with_points(s.domain, 17), BoundaryConditions::homogeneous());
    CHECK(r.max_equivalence_gap_w == 0.0);
    CHECK(r.max_equivalence_gap_phi == 0.0);
    CHECK(r.pass.at("equivalence"));
  }
  SUBCASE("paraboloid cap") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {0, 1, 0, 1}, 0.2};
    const auto r = verify_equivalence(s, unit, Grid::with_points(s.domain, 33), BoundaryConditions::homogeneous());
    CHECK(r.max_equivalence_gap_w <= 1e-10);
    CHECK(r.max_equivalence_gap_phi <= 1e-10);
    CHECK(r.all_pass());
  }
  SUBCASE("generic surface, simply supported") {
    ShellSpec s{parse("0.1*sin(x1)*sin(x2)"), parse("1"), {0, 3.141592653589793, 0, 3.141592653589793}, 0.2};
    const auto bc = BoundaryConditions::homogeneous(BcKind::simply_supported, BcKind::clamped);
    const auto r = verify_equivalence(s, unit, Grid::with_points(s.domain, 33), bc);
    CHECK(r.max_equivalence_gap_w <= 1e-9);
    CHECK(r.max_equivalence_gap_phi <= 1e-9);
  }
  SUBCASE("solver failure propagates") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {0, 1, 0, 1}, 0.2};
    EquivalenceOptions o;
    o.solve.max_iter = 1;
    o.solve.max_load_steps = 1;
    CHECK_THROWS_AS(verify_equivalence(s, unit, Grid::with_points(s.domain, 17), BoundaryConditions::homogeneous(), o),
                    SolverError);
  }
}

TEST_CASE("homothetic flow") {
  const Point2 x{0.7, -0.4};
  Generator rot;
  rot.C2 = 1.0;
  const Point2 y = homothetic_flow(rot, 0.3, x);
  CHECK(y.x1 == doctest::Approx(x.x1 * std::cos(0.3) + x.x2 * std::sin(0.3)));
  CHECK(y.x2 == doctest::Approx(-x.x1 * std::sin(0.3) + x.x2 * std::cos(0.3)));
  Generator dil;
  dil.C1 = 1.0;
  CHECK(homothetic_flow(dil, std::log(2.0), x).x1 == doctest::Approx(1.4));
  Generator tr;
  tr.C3 = 2.0;
  tr.C4 = -1.0;
  CHECK(homothetic_flow(tr, 0.5, x).x1 == doctest::Approx(1.7));
  CHECK(homothetic_flow(tr, 0.5, x).x2 == doctest::Approx(-0.9));

  // group property and the flow's tangent is xi
  const Generator g{0.3, -0.8, 0.5, 1.1};
  const Point2 a = homothetic_flow(g, 0.2, homothetic_flow(g, 0.5, x)), b = homothetic_flow(g, 0.7, x);
  CHECK(a.x1 == doctest::Approx(b.x1));
  CHECK(a.x2 == doctest::Approx(b.x2));
  const double h = 1e-5;
  const Point2 p = homothetic_flow(g, h, x), m = homothetic_flow(g, -h, x);
  CHECK((p.x1 - m.x1) / (2 * h) == doctest::Approx(g.xi1(x)).epsilon(1e-8));
  CHECK((p.x2 - m.x2) / (2 * h) == doctest::Approx(g.xi2(x)).epsilon(1e-8));
  CHECK(homothetic_flow(g, 0.0, x).x1 == x.x1);
}

TEST_CASE("Lagrange interpolation") {
  const Grid g({-1, 1, 0, 2}, 15, 11);
  const Expr quintic = parse("x1^5 - 2*x1^2*x2^3 + x2^5 + 3");
  const ExtendedField u = ExtendedField::sample(g, quintic);
  const Interpolator in(u, 6);
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const Point2 x{rng.uniform(-1, 1), rng.uniform(0, 2)};
    CHECK(in(x) == doctest::Approx(eval(quintic, x)).epsilon(1e-11));
  }
  CHECK(in(g.node(3, 4)) == doctest::Approx(u.at(3, 4)));
  CHECK_THROWS_AS(in({1.5, 1.0}), std::out_of_range);
  CHECK_THROWS_AS(Interpolator(u, 1), std::invalid_argument);
  const Interpolator cubic(u, 4);
  CHECK(std::abs(cubic({0.123, 1.01}) - eval(quintic, {0.123, 1.01})) > 1e-8);
}

TEST_CASE("orbit residuals") {
  SUBCASE("identity transform gives ratio 1") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {-1, 1, -1, 1}, 0.2};
    const Solved sv = solve_vk(s, 33);
    Generator rot;
    rot.C2 = 1.0;
    CHECK(orbit_residual(sv.w, sv.phi, rot, s, unit, 0.0).ratio == 1.0);
  }
  SUBCASE("rotation of the paraboloid is a symmetry") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {-1, 1, -1, 1}, 0.2};
    const Solved sv = solve_vk(s, 33);
    Generator rot;
    rot.C2 = 1.0;
    const OrbitResult o = orbit_residual(sv.w, sv.phi, rot, s, unit, 0.3);
    CHECK(o.points > 10);
    CHECK(o.ratio <= 10.0);
    // the dilation is not admitted here
    Generator dil;
    dil.C1 = 1.0;
    CHECK(orbit_residual(sv.w, sv.phi, dil, s, unit, -0.2).ratio > 100.0);
  }
  SUBCASE("dilation of a plate") {
    ShellSpec s{parse("0"), parse("0"), {-1, 1, -1, 1}, 0.2};
    BoundaryConditions bc{exact_bc(BcKind::clamped, parse("0.1*(x1^2 - x2^2) + 0.05*x1*x2^2")),
                          FieldBc::homogeneous(BcKind::clamped)};
    const Solved sv = solve_vk(s, 33, bc);
    CHECK(sv.w.max_abs() > 0.01);
    Generator dil;
    dil.C1 = 1.0;
    CHECK(orbit_residual(sv.w, sv.phi, dil, s, unit, std::log(2.0)).ratio <= 10.0);
  }
  SUBCASE("stencils that leave the domain are rejected") {
    ShellSpec s{parse("0"), parse("0"), {0, 1, 0, 1}, 0.2};
    const Solved sv = solve_vk(s, 17);
    Generator dil;
    dil.C1 = 1.0;
    CHECK_THROWS_AS(orbit_residual(sv.w, sv.phi, dil, s, unit, -4.0), std::invalid_argument);
  }
}

TEST_CASE("reduction of the determining equations") {
  SUBCASE("plate") {
    ShellSpec s{parse("0"), parse("0"), {0, 1, 0, 1}, 0.2};
    CHECK(verify_reduction(s, unit, 10) == 0.0);
  }
  SUBCASE("paraboloid") {
    ShellSpec s{parse("0.5*(x1^2 + x2^2)"), parse("0"), {-1, 1, -1, 1}, 0.2};
    const ReductionResult r = verify_reduction_detailed(s, unit, 10);
    CHECK(r.max_full_residual < 1e-9);
    CHECK(r.max_curvature_residual < 1e-9);
    CHECK(r.admitted_cases >= 80);
    CHECK(r.inconsistent_cases == 0);
  }
  SUBCASE("sin*sin: both sides fail together for the dilation") {
    ShellSpec s{parse("sin(x1)*sin(x2)"), parse("0"), {0.3, 2.8, 0.3, 2.8}, 0.2};
    Generator dil;
    dil.C1 = 1.0;
    const DeterminingSystem sys(dil, s, unit);
    const Point2 x{1.1, 1.9};
    const auto full = sys.residuals(x);
    const auto red = invariance_residuals(dil, reduced_load(s, unit), gauss_curvature(s), x);
    CHECK(std::abs(red.rK) > 1e-3);
    CHECK(std::abs(full.r_12eq) > 1e-3);
    const ReductionResult r = verify_reduction_detailed(s, unit, 10);
    CHECK(r.rejected_cases > 0);
    CHECK(r.inconsistent_cases == 0);
    CHECK(r.max_full_residual < 1e-8);
  }
}
