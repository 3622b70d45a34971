#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "shellsym/kernels.hpp"
#include "shellsym/random.hpp"

using namespace shellsym;
namespace k = shellsym::kernels;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1, 1);
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double scale) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * scale);
}

}  // namespace

TEST_CASE("scalar kernels are always available") {
  CHECK(k::supported(k::Isa::scalar));
  CHECK(std::string(k::to_string(k::Isa::scalar)) == "scalar");
  const k::Isa before = k::current();
  k::select(k::Isa::scalar);
  CHECK(k::current() == k::Isa::scalar);
  CHECK(&k::active() == &k::table(k::Isa::scalar));
  k::select(before);
}

TEST_CASE("SIMD kernels match the scalar reference") {
  if (!k::supported(k::Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; skipping");
    CHECK_THROWS_AS(k::select(k::Isa::avx2), std::invalid_argument);
    return;
  }
  const auto& s = k::table(k::Isa::scalar);
  const auto& v = k::table(k::Isa::avx2);
  Rng rng(99);
  // odd lengths exercise the scalar tails
  for (int n : {1, 3, 4, 7, 9, 16, 31, 63, 130}) {
    const int stride = n + 4;
    const auto grid = random_vector(rng, static_cast<std::size_t>(stride) * 5);
    const double* src = grid.data() + 2 * stride + 2;

    std::vector<double> a(n), b(n);
    s.biharmonic_row(src, stride, n, 3.0, 5.0, 7.0, a.data());
    v.biharmonic_row(src, stride, n, 3.0, 5.0, 7.0, b.data());
    check_close(a, b, 200.0);

    std::vector<double> xx1(n), yy1(n), xy1(n), xx2(n), yy2(n), xy2(n);
    s.hessian_row(src, stride, n, 4.0, 9.0, 0.5, xx1.data(), yy1.data(), xy1.data());
    v.hessian_row(src, stride, n, 4.0, 9.0, 0.5, xx2.data(), yy2.data(), xy2.data());
    check_close(xx1, xx2, 20.0);
    check_close(yy1, yy2, 40.0);
    check_close(xy1, xy2, 4.0);

    const auto p = random_vector(rng, 6 * n);
    s.bracket_row(&p[0], &p[n], &p[2 * n], &p[3 * n], &p[4 * n], &p[5 * n], n, a.data());
    v.bracket_row(&p[0], &p[n], &p[2 * n], &p[3 * n], &p[4 * n], &p[5 * n], n, b.data());
    check_close(a, b, 4.0);

    const auto x = random_vector(rng, n);
    auto y1 = random_vector(rng, n);
    auto y2 = y1;
    s.axpy(n, -0.7, x.data(), y1.data());
    v.axpy(n, -0.7, x.data(), y2.data());
    check_close(y1, y2, 2.0);

    CHECK(std::abs(s.dot(n, x.data(), y1.data()) - v.dot(n, x.data(), y1.data())) <= 1e-14 * n);
  }
}

TEST_CASE("kernels agree on known values") {
  // unit spacing: d4x of x^4 is 24 and d2x d2y of x^2 y^2 is 4
  std::vector<double> g(9 * 9);
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) g[j * 9 + i] = std::pow(i - 4.0, 4) + (i - 4.0) * (i - 4.0) * (j - 4.0) * (j - 4.0);
  for (k::Isa isa : {k::Isa::scalar, k::Isa::avx2}) {
    if (!k::supported(isa)) continue;
    double out = 0.0;
    k::table(isa).biharmonic_row(&g[4 * 9 + 4], 9, 1, 1.0, 1.0, 1.0, &out);
    CHECK(out == doctest::Approx(24.0 + 4.0));
    std::vector<double> q(5 * 5);
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) q[j * 5 + i] = (i - 2.0) * (i - 2.0) + 3 * (i - 2.0) * (j - 2.0) + 2 * (j - 2.0) * (j - 2.0);
    double xx = 0, yy = 0, xy = 0;
    k::table(isa).hessian_row(&q[2 * 5 + 2], 5, 1, 1.0, 1.0, 0.25, &xx, &yy, &xy);
    CHECK(xx == doctest::Approx(2.0));
    CHECK(yy == doctest::Approx(4.0));
    CHECK(xy == doctest::Approx(3.0));
  }
}
