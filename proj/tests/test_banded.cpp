#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "shellsym/banded.hpp"
#include "shellsym/random.hpp"

using namespace shellsym;

TEST_CASE("banded storage") {
  BandedMatrix a(6, 1, 2);
  CHECK(a.in_band(0, 2));
  CHECK_FALSE(a.in_band(0, 3));
  CHECK(a.in_band(3, 2));
  CHECK_FALSE(a.in_band(3, 1));
  a.add(0, 2, 1.5);
  a.add(0, 2, 1.0);
  CHECK(a(0, 2) == 2.5);
  CHECK(a(5, 0) == 0.0);
  CHECK_THROWS_AS(a.add(0, 4, 1.0), std::out_of_range);
  const auto y = a.multiply(std::vector<double>{0, 0, 2, 0, 0, 0});
  CHECK(y[0] == 5.0);
}

TEST_CASE("banded LU agrees with a dense solve") {
  Rng rng(8);
  for (auto [n, kl, ku] : {std::tuple{10, 2, 3}, std::tuple{40, 5, 5}, std::tuple{57, 9, 4}}) {
    BandedMatrix a(n, kl, ku);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = std::max(0, r - kl); c <= std::min(n - 1, r + ku); ++c) {
        const double v = rng.uniform(-1, 1);
        a.add(r, c, v);
        dense(r, c) = v;
      }
    std::vector<double> b(n);
    Eigen::VectorXd be(n);
    for (int i = 0; i < n; ++i) be(i) = b[i] = rng.uniform(-1, 1);
    const Eigen::VectorXd x = dense.partialPivLu().solve(be);
    BandedLU(a).solve(b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(x(i)).epsilon(1e-9));
    const auto back = a.multiply(b);
    for (int i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(be(i)).epsilon(1e-9));
  }
}

TEST_CASE("pivoting handles a zero diagonal") {
  BandedMatrix a(3, 1, 1);
  a.add(0, 1, 1.0);
  a.add(1, 0, 1.0);
  a.add(1, 2, 1.0);
  a.add(2, 1, 1.0);
  a.add(2, 2, 1.0);
  std::vector<double> b{1.0, 2.0, 3.0};
  BandedLU(a).solve(b);
  // x1 = 1, x0 + x2 = 2, x1 + x2 = 3
  CHECK(b[1] == doctest::Approx(1.0));
  CHECK(b[2] == doctest::Approx(2.0));
  CHECK(b[0] == doctest::Approx(0.0));
}

TEST_CASE("singular matrices are reported") {
  BandedMatrix a(3, 1, 1);
  a.add(0, 0, 1.0);
  a.add(2, 2, 1.0);
  CHECK_THROWS_AS(BandedLU{a}, SingularMatrix);
}
