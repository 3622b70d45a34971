#include <doctest.h>

#include <cmath>
#include <sstream>

#include "shellsym/grid.hpp"
#include "support.hpp"

using namespace shellsym;

namespace {

FieldGrid random_field(const Grid& g, Rng& rng) {
  FieldGrid f(g);
  for (auto& v : f.values()) v = rng.uniform(-1, 1);
  return f;
}

ExtendedField extend_exact(const Grid& g, const Expr& u, BcKind kind) {
  return extend(FieldGrid::sample(g, u), DiscreteBc::make(exact_bc(kind, u), g));
}

}  // namespace

TEST_CASE("grid geometry") {
  const Grid g({0, 2, -1, 1}, 9, 19);
  CHECK(g.h1 == doctest::Approx(0.2));
  CHECK(g.h2 == doctest::Approx(0.1));
  CHECK(g.node(10, 20).x1 == doctest::Approx(2.0));
  CHECK(g.node(10, 20).x2 == doctest::Approx(1.0));
  CHECK(g.size() == 171);
  const Grid p = Grid::with_points({0, 1, 0, 1}, 33);
  CHECK(p.n1 == 31);
  CHECK(p.h1 == doctest::Approx(1.0 / 32));
  CHECK_THROWS_AS(Grid({0, 1, 0, 1}, 8, 9), std::invalid_argument);
  CHECK_THROWS_AS(Grid({1, 0, 0, 1}, 9, 9), std::invalid_argument);
}

TEST_CASE("ghost rules reproduce low-degree polynomials") {
  const Grid g({-0.5, 1.0, 0.2, 1.3}, 11, 9);
  auto ghost_error = [&](const Expr& u, BcKind kind) {
    const ExtendedField e = extend_exact(g, u, kind);
    double worst = 0.0;
    for (int t = 1; t <= g.n2; ++t) {
      worst = std::max(worst, std::abs(e.at(-1, t) - eval(u, g.node(-1, t))));
      worst = std::max(worst, std::abs(e.at(g.n1 + 2, t) - eval(u, g.node(g.n1 + 2, t))));
    }
    for (int t = 1; t <= g.n1; ++t) {
      worst = std::max(worst, std::abs(e.at(t, -1) - eval(u, g.node(t, -1))));
      worst = std::max(worst, std::abs(e.at(t, g.n2 + 2) - eval(u, g.node(t, g.n2 + 2))));
    }
    return worst;
  };
  CHECK(ghost_error(parse("0.3*x1^2 + x1*x2 - 2*x2^2 + x1 - 4"), BcKind::clamped) < 1e-12);
  CHECK(ghost_error(parse("x1^3 + x1^2*x2 - 2*x2^3 + x1*x2 + 1"), BcKind::simply_supported) < 1e-12);
  CHECK(ghost_error(parse("x1^3"), BcKind::clamped) > 1e-6);  // clamped rule is only second order
}

TEST_CASE("biharmonic stencil") {
  const Grid g({0, 1, 0, 1}, 15, 15);
  CHECK(biharmonic(extend(FieldGrid(g), DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), g))).max_abs() == 0.0);

  const FieldGrid b = biharmonic(extend_exact(g, parse("x1^4"), BcKind::clamped));
  for (int j = 1; j < g.n2 - 1; ++j)
    for (int i = 1; i < g.n1 - 1; ++i) CHECK(b(i, j) == doctest::Approx(24.0).epsilon(1e-9));

  // simply supported ghosts are exact on cubics, so Lap^2 vanishes everywhere
  const FieldGrid q = biharmonic(extend_exact(g, parse("x1^3 + x1^2*x2 - 2*x2^3"), BcKind::simply_supported));
  CHECK(q.max_abs() < 1e-6);

  // second order on a smooth field: error ratio about 4 under halving
  const Expr u = parse("sin(pi*x1)*sin(pi*x2)");
  auto error = [&](int n) {
    const Grid gg({0, 1, 0, 1}, n, n);
    const FieldGrid r = biharmonic(extend_exact(gg, u, BcKind::simply_supported));
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(r(i, j) - 4 * std::pow(M_PI, 4) * eval(u, gg.node(i + 1, j + 1))));
    return worst;
  };
  const double ratio = error(15) / error(31);
  CHECK(ratio > 3.7);
  CHECK(ratio < 4.3);
}

TEST_CASE("bracket stencil") {
  const Grid g({-1, 1, 0, 2}, 11, 13);
  const ExtendedField u = extend_exact(g, parse("0.5*(x1^2 + x2^2)"), BcKind::clamped);
  const FieldGrid uu = bracket(u, u);
  for (double v : uu.values()) CHECK(v == doctest::Approx(2.0));
  const ExtendedField zero = extend(FieldGrid(g), DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), g));
  CHECK(bracket(u, zero).max_abs() == 0.0);
  const ExtendedField a = extend_exact(g, parse("x1^2/2"), BcKind::clamped);
  const ExtendedField c = extend_exact(g, parse("x2^2/2"), BcKind::clamped);
  const FieldGrid ac = bracket(a, c);
  for (double v : ac.values()) CHECK(v == doctest::Approx(1.0));

  Rng rng(4);
  const DiscreteBc bc = DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), g);
  const FieldGrid f1 = random_field(g, rng), f2 = random_field(g, rng), f3 = random_field(g, rng);
  FieldGrid comb(g);
  for (std::size_t k = 0; k < g.size(); ++k) comb.values()[k] = 2.0 * f1.values()[k] - 0.5 * f2.values()[k];
  const ExtendedField e1 = extend(f1, bc), e2 = extend(f2, bc), e3 = extend(f3, bc), ec = extend(comb, bc);
  const FieldGrid lhs = bracket(ec, e3), b13 = bracket(e1, e3), b23 = bracket(e2, e3), b31 = bracket(e3, e1);
  const double scale = std::max(1.0, b13.max_abs());
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(lhs.values()[k] - (2.0 * b13.values()[k] - 0.5 * b23.values()[k])) <= 1e-12 * scale);
    CHECK(std::abs(b13.values()[k] - b31.values()[k]) <= 1e-14 * scale);
  }
}

TEST_CASE("mismatched grids are rejected") {
  const Grid a({0, 1, 0, 1}, 9, 9), b({0, 1, 0, 1}, 11, 11);
  const auto ea = extend(FieldGrid(a), DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), a));
  const auto eb = extend(FieldGrid(b), DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), b));
  CHECK_THROWS_AS(bracket(ea, eb), GridMismatch);
  CHECK_THROWS_AS(extend(FieldGrid(a), DiscreteBc::make(FieldBc::homogeneous(BcKind::clamped), b)), GridMismatch);
}

TEST_CASE("CSV output") {
  const Grid g({0, 1, 0, 2}, 9, 9);
  const ExtendedField u = extend_exact(g, parse("x1 + 10*x2 + 1/3"), BcKind::clamped);
  std::ostringstream os;
  write_csv(os, u);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x1,x2,value");
  int rows = 0;
  std::string first, last;
  while (std::getline(in, line)) {
    if (rows == 0) first = line;
    last = line;
    ++rows;
  }
  CHECK(rows == 11 * 11);
  CHECK(first == "0,0,0.33333333333333331");
  CHECK(last == "1,2,21.333333333333332");
}
