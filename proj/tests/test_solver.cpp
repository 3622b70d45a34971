#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "shellsym/solver.hpp"
#include "shellsym/verify.hpp"
#include "support.hpp"

using namespace shellsym;

namespace {

FieldGrid random_field(const Grid& g, Rng& rng, double amp) {
  FieldGrid f(g);
  for (auto& v : f.values()) v = rng.uniform(-amp, amp);
  return f;
}

FieldGrid shifted(const FieldGrid& w, const FieldGrid& f) {
  FieldGrid out(w.grid());
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] = w.values()[k] + f.values()[k];
  return out;
}

double max_diff(const FieldGrid& a, const FieldGrid& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

const MaterialParams unit{};

}  // namespace

TEST_CASE("system names") {
  CHECK(system_from_string("marguerre") == System::marguerre);
  CHECK(std::string(to_string(System::vonkarman)) == "vonkarman");
  CHECK_THROWS_AS(system_from_string("shell"), std::invalid_argument);
}

TEST_CASE("zero plate has zero residual") {
  ShellSpec s{parse("0"), parse("0"), {0, 1, 0, 1}, 0.2};
  const Grid g({0, 1, 0, 1}, 11, 11);
  const Problem p = make_marguerre(s, unit, g, BoundaryConditions::homogeneous());
  const Residual r = residual(p, FieldGrid(g), FieldGrid(g));
  CHECK(r.norm_inf() == 0.0);
  CHECK_THROWS_AS(residual(p, FieldGrid(Grid({0, 1, 0, 1}, 9, 9)), FieldGrid(g)), GridMismatch);
  ShellSpec other{parse("0"), parse("0"), {0, 2, 0, 1}, 0.2};
  CHECK_THROWS_AS(make_marguerre(other, unit, g, BoundaryConditions::homogeneous()), GridMismatch);
}

TEST_CASE("manufactured residual is second order") {
  const ManufacturedCase mc = ManufacturedCase::standard(unit);
  auto res = [&](int points) {
    const Grid g = Grid::with_points(mc.domain, points);
    const Problem p = make_vonkarman(mc.form, unit, g, mc.bc);
    const Residual r = residual(p, FieldGrid::sample(g, mc.w_exact), FieldGrid::sample(g, mc.phi_exact));
    // Rows next to the boundary carry the O(h^3) ghost error divided by h^4;
    // the interior truncation error is what is second order.
    double worst = 0.0;
    for (int j = 2; j < g.n2 - 2; ++j)
      for (int i = 2; i < g.n1 - 2; ++i)
        worst = std::max({worst, std::abs(r.r1(i, j)), std::abs(r.r2(i, j))});
    return worst;
  };
  const double ratio = res(33) / res(65);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("matched data makes the two discrete systems identical") {
  Rng rng(12);
  struct Case {
    const char* f;
    const char* p;
    Domain2D d;
    BcKind w, phi;
  };
  const Case cases[] = {
      {"0.05*(x1^2 + x2^2)", "1", {0, 1, 0, 1}, BcKind::clamped, BcKind::clamped},
      {"0.1*sin(x1)*sin(x2)", "1 + x1", {0, 3.141592653589793, 0, 3.141592653589793}, BcKind::simply_supported,
       BcKind::clamped},
      {"0.2*x1*x2 + 0.1*exp(x1)", "x2", {-1, 1, 0, 1.5}, BcKind::clamped, BcKind::simply_supported},
  };
  for (const auto& c : cases) {
    ShellSpec s{parse(c.f), parse(c.p), c.d, 0.5};
    const Grid g(c.d, 13, 11);
    const auto bc = BoundaryConditions::homogeneous(c.w, c.phi);
    const Problem pm = make_marguerre(s, unit, g, bc), pv = make_vonkarman(s, unit, g, bc);
    const FieldGrid f = FieldGrid::sample(g, s.f);
    for (int k = 0; k < 5; ++k) {
      const FieldGrid w = random_field(g, rng, 0.1), phi = random_field(g, rng, 0.1);
      const Residual rm = residual(pm, w, phi), rv = residual(pv, shifted(w, f), phi);
      const double tol = 1e-12 * std::max(1.0, rm.scale);
      CHECK(max_diff(rm.r1, rv.r1) <= tol);
      CHECK(max_diff(rm.r2, rv.r2) <= tol);
    }
  }
}

TEST_CASE("symbolic data agrees with matched data to discretization error") {
  ShellSpec s{parse("0.1*sin(x1)*sin(x2)"), parse("1"), {0, 3, 0, 3}, 0.5};
  auto gap = [&](int points) {
    const Grid g = Grid::with_points(s.domain, points);
    const auto bc = BoundaryConditions::homogeneous();
    const Problem a = make_vonkarman(s, unit, g, bc, DataMode::matched);
    const Problem b = make_vonkarman(s, unit, g, bc, DataMode::symbolic);
    double m = 0.0;
    // away from the boundary ring the matched load is a plain truncation error
    for (int j = 2; j < g.n2 - 2; ++j)
      for (int i = 2; i < g.n1 - 2; ++i) {
        const std::size_t k = static_cast<std::size_t>(j) * g.n1 + i;
        m = std::max({m, std::abs(a.load[k] - b.load[k]), std::abs(a.rhs2[k] - b.rhs2[k])});
      }
    return m;
  };
  CHECK(gap(17) / gap(33) > 3.5);
}

TEST_CASE("Jacobian matches finite differences of the residual") {
  Rng rng(77);
  for (System sys : {System::marguerre, System::vonkarman}) {
    ShellSpec s{parse("0.3*sin(x1)*cos(x2) + 0.2*x1^2"), parse("1"), {0, 1, 0, 1.2}, 0.5};
    const Grid g({0, 1, 0, 1.2}, 9, 10);
    const auto bc = BoundaryConditions::homogeneous(BcKind::simply_supported, BcKind::clamped);
    const Problem p = sys == System::marguerre ? make_marguerre(s, unit, g, bc) : make_vonkarman(s, unit, g, bc);
    const FieldGrid w = random_field(g, rng, 1.0), phi = random_field(g, rng, 1.0);
    const FieldGrid dw = random_field(g, rng, 1.0), dp = random_field(g, rng, 1.0);
    std::vector<double> v(2 * g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      v[2 * k] = dw.values()[k];
      v[2 * k + 1] = dp.values()[k];
    }
    const std::vector<double> jv = jacobian(p, w, phi).multiply(v);
    const double eps = 1e-6;
    auto plus = [&](double t) {
      FieldGrid a = w, b = phi;
      for (std::size_t k = 0; k < g.size(); ++k) {
        a.values()[k] += t * dw.values()[k];
        b.values()[k] += t * dp.values()[k];
      }
      return residual(p, a, b);
    };
    const Residual rp = plus(eps), rm = plus(-eps);
    double err = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double f1 = (rp.r1.values()[k] - rm.r1.values()[k]) / (2 * eps);
      const double f2 = (rp.r2.values()[k] - rm.r2.values()[k]) / (2 * eps);
      err = std::max({err, std::abs(f1 - jv[2 * k]), std::abs(f2 - jv[2 * k + 1])});
      ref = std::max({ref, std::abs(jv[2 * k]), std::abs(jv[2 * k + 1])});
    }
    CHECK(err <= 1e-6 * ref);
  }
}

TEST_CASE("Newton on the reference problems") {
  SUBCASE("unloaded plate converges in one iteration") {
    ShellSpec s{parse("0"), parse("0"), {0, 1, 0, 1}, 0.2};
    const Grid g = Grid::with_points(s.domain, 17);
    const SolveResult r = newton_solve(make_marguerre(s, unit, g, BoundaryConditions::homogeneous()));
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 1);
    CHECK(r.w.max_abs() == 0.0);
    CHECK(r.phi.max_abs() == 0.0);
  }
  SUBCASE("paraboloid cap") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {0, 1, 0, 1}, 0.2};
    const Grid g = Grid::with_points(s.domain, 33);
    const SolveResult r = newton_solve(make_marguerre(s, unit, g, BoundaryConditions::homogeneous()));
    REQUIRE(r.report.converged);
    CHECK(r.report.load_steps_used == 1);
    CHECK(r.report.final_residual_inf <= 1e-10 + 1e-10 * r.report.residual_scale);
    const auto& h = r.report.residual_norm_history;
    for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] <= h[k - 1]);
    // clamped plate deflection under unit load is about 1.27e-3
    CHECK(r.w.max_abs() == doctest::Approx(1.27e-3).epsilon(0.02));
  }
  SUBCASE("strong load falls back to continuation") {
    ShellSpec s{parse("0"), parse("1e6"), {0, 1, 0, 1}, 0.2};
    const Grid g = Grid::with_points(s.domain, 17);
    const SolveResult r = newton_solve(make_marguerre(s, unit, g, BoundaryConditions::homogeneous()));
    CHECK(r.report.converged);
    CHECK(r.report.load_steps_used > 1);
  }
  SUBCASE("non-convergence is reported, not thrown") {
    ShellSpec s{parse("0.05*(x1^2 + x2^2)"), parse("1"), {0, 1, 0, 1}, 0.2};
    const Grid g = Grid::with_points(s.domain, 17);
    SolveOptions o;
    o.max_iter = 1;
    o.max_load_steps = 2;
    const SolveResult r = newton_solve(make_marguerre(s, unit, g, BoundaryConditions::homogeneous()), o);
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.final_residual_inf > 0.0);
  }
}

TEST_CASE("Newton converges quadratically on the manufactured case") {
  const ManufacturedCase mc = ManufacturedCase::standard(unit);
  const Grid g = Grid::with_points(mc.domain, 33);
  const SolveResult r = newton_solve(make_vonkarman(mc.form, unit, g, mc.bc));
  REQUIRE(r.report.converged);
  const auto& h = r.report.residual_norm_history;
  const double r0 = h.front();
  const double floor = 1e3 * (1e-10 + 1e-16 * r.report.residual_scale);
  int checked = 0;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    if (h[k] >= 1e-3 * r0 || h[k + 1] <= floor) continue;
    CHECK(h[k + 1] <= 0.5 * h[k] * h[k] / r0);
    ++checked;
  }
  CHECK(checked >= 1);
}

TEST_CASE("manufactured solution converges at second order") {
  const auto rows = manufactured_convergence(ManufacturedCase::standard(unit), unit, {17, 33, 65});
  REQUIRE(rows.size() == 3);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].converged);
    CHECK(rows[k].order_w == doctest::Approx(2.0).epsilon(0.15));
    CHECK(rows[k].order_phi == doctest::Approx(2.0).epsilon(0.15));
  }
}
