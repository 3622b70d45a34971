#include <doctest.h>

#include <cmath>

#include "shellsym/geometry.hpp"
#include "support.hpp"

using namespace shellsym;

TEST_CASE("domain and parameter validation") {
  CHECK_THROWS_AS((Domain2D{1, 0, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Domain2D{0, 1, 0, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((Domain2D{-1, 1, 0, 2}.validate()));
  ShellSpec s{parse("0"), parse("0"), {}, 0.2};
  CHECK_NOTHROW(s.validate());
  s.epsilon = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.epsilon = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS((MaterialParams{0, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MaterialParams{1, -1, 1}.validate()), std::invalid_argument);
}

TEST_CASE("flat-metric constants") {
  CHECK(kronecker(1, 1) == 1.0);
  CHECK(kronecker(1, 2) == 0.0);
  CHECK(alternating(1, 2) == 1.0);
  CHECK(alternating(2, 1) == -1.0);
  CHECK(alternating(2, 2) == 0.0);
}

TEST_CASE("curvatures of simple surfaces") {
  const Point2 x{0.4, -0.3};
  ShellSpec plate{parse("0"), parse("0"), {}, 0.2};
  CHECK(eval(gauss_curvature(plate), x) == 0.0);
  CHECK(eval(mean_curvature(plate), x) == 0.0);

  ShellSpec para{parse("0.5*(x1^2 + x2^2)"), parse("0"), {}, 0.2};
  CHECK(eval(mean_curvature(para), x) == doctest::Approx(1.0));
  CHECK(eval(gauss_curvature(para), x) == doctest::Approx(1.0));
  CHECK(to_string(gauss_curvature(para)) == "1");

  ShellSpec cyl{parse("x1^2/2"), parse("0"), {}, 0.2};
  CHECK(eval(mean_curvature(cyl), x) == doctest::Approx(0.5));
  CHECK(eval(gauss_curvature(cyl), x) == 0.0);

  ShellSpec saddle{parse("x1*x2"), parse("0"), {}, 0.2};
  CHECK(eval(gauss_curvature(saddle), x) == doctest::Approx(-1.0));
  const CurvatureTensor b = curvature_tensor(saddle);
  CHECK(eval(b(1, 2), x) == 1.0);
  CHECK(eval(b(2, 1), x) == 1.0);
  CHECK(eval(b(1, 1), x) == 0.0);
}

TEST_CASE("Gauss curvature of sin*sin against a finite-difference Hessian") {
  ShellSpec s{parse("sin(x1)*sin(x2)"), parse("0"), {0.3, 2.8, 0.3, 2.8}, 0.2};
  const Expr K = gauss_curvature(s);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const Point2 x{rng.uniform(0.3, 2.8), rng.uniform(0.3, 2.8)};
    const double h = 1e-4;
    auto f = [&](double a, double b) { return std::sin(x.x1 + a) * std::sin(x.x2 + b); };
    const double f11 = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h);
    const double f22 = (f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h);
    const double f12 = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    CHECK(eval(K, x) == doctest::Approx(f11 * f22 - f12 * f12).epsilon(1e-5));
    const double closed = std::pow(std::sin(x.x1) * std::sin(x.x2), 2) - std::pow(std::cos(x.x1) * std::cos(x.x2), 2);
    CHECK(eval(K, x) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("reduced load") {
  const Point2 x{0.7, 1.1};
  MaterialParams mat;
  ShellSpec s{parse("sin(x1)*sin(x2)"), parse("0"), {}, 0.2};
  CHECK(to_string(reduced_load(s, mat)) == "4*sin(x1)*sin(x2)");
  s.p = parse("2.5");
  mat.D = 3.0;
  CHECK(eval(reduced_load(s, mat), x) == doctest::Approx(12 * std::sin(0.7) * std::sin(1.1) + 2.5));
  ShellSpec plate{parse("0"), parse("x1"), {}, 0.2};
  CHECK(reduced_load(plate, mat) == parse("x1"));
  const GeometryFields g = GeometryFields::compute(s, mat);
  CHECK(eval(g.P, x) == doctest::Approx(eval(reduced_load(s, mat), x)));
  CHECK(eval(g.K, x) == doctest::Approx(eval(gauss_curvature(s), x)));
  CHECK(eval(g.H, x) == doctest::Approx(eval(mean_curvature(s), x)));
}

TEST_CASE("shallowness check") {
  ShellSpec cap{parse("0.05*(x1^2 + x2^2)"), parse("1"), {0, 1, 0, 1}, 0.2};
  const ShallownessReport ok = shallowness_check(cap);
  CHECK(ok.ok);
  CHECK(ok.max_slope_product == doctest::Approx(0.01));
  ShellSpec steep{parse("2*x1"), parse("0"), {0, 1, 0, 1}, 0.2};
  const ShallownessReport bad = shallowness_check(steep);
  CHECK_FALSE(bad.ok);
  CHECK(bad.max_slope_product == doctest::Approx(4.0));
}
