#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace shellsym::kernels::avx2 {

namespace {

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }

}  // namespace

void biharmonic_row(const double* src, std::ptrdiff_t s, int n, double cxxxx, double cyyyy,
                    double cxxyy, double* out) {
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d six = _mm256_set1_pd(6.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vx = _mm256_set1_pd(cxxxx);
  const __m256d vy = _mm256_set1_pd(cyyyy);
  const __m256d vxy = _mm256_set1_pd(cxxyy);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* u = src + i;
    const __m256d c = ld(u);
    const __m256d w1 = ld(u - 1), e1 = ld(u + 1);
    const __m256d n1 = ld(u - s), s1 = ld(u + s);
    // d4x = (u-2 + u+2) - 4 (u-1 + u+1) + 6 u
    __m256d d4x = _mm256_add_pd(ld(u - 2), ld(u + 2));
    d4x = _mm256_fnmadd_pd(four, _mm256_add_pd(w1, e1), d4x);
    d4x = _mm256_fmadd_pd(six, c, d4x);
    __m256d d4y = _mm256_add_pd(ld(u - 2 * s), ld(u + 2 * s));
    d4y = _mm256_fnmadd_pd(four, _mm256_add_pd(n1, s1), d4y);
    d4y = _mm256_fmadd_pd(six, c, d4y);
    const __m256d dn = _mm256_fnmadd_pd(two, n1, _mm256_add_pd(ld(u - s - 1), ld(u - s + 1)));
    const __m256d dc = _mm256_fnmadd_pd(two, c, _mm256_add_pd(w1, e1));
    const __m256d dp = _mm256_fnmadd_pd(two, s1, _mm256_add_pd(ld(u + s - 1), ld(u + s + 1)));
    const __m256d d2x2y = _mm256_fnmadd_pd(two, dc, _mm256_add_pd(dn, dp));
    __m256d r = _mm256_mul_pd(vx, d4x);
    r = _mm256_fmadd_pd(vy, d4y, r);
    r = _mm256_fmadd_pd(vxy, d2x2y, r);
    _mm256_storeu_pd(out + i, r);
  }
  if (i < n) scalar::biharmonic_row(src + i, s, n - i, cxxxx, cyyyy, cxxyy, out + i);
}

void hessian_row(const double* src, std::ptrdiff_t s, int n, double inv_h1sq, double inv_h2sq,
                 double inv_4h1h2, double* uxx, double* uyy, double* uxy) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d cx = _mm256_set1_pd(inv_h1sq);
  const __m256d cy = _mm256_set1_pd(inv_h2sq);
  const __m256d cxy = _mm256_set1_pd(inv_4h1h2);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* u = src + i;
    const __m256d c = ld(u);
    const __m256d xx = _mm256_fnmadd_pd(two, c, _mm256_add_pd(ld(u - 1), ld(u + 1)));
    const __m256d yy = _mm256_fnmadd_pd(two, c, _mm256_add_pd(ld(u - s), ld(u + s)));
    const __m256d xy = _mm256_sub_pd(_mm256_sub_pd(ld(u + s + 1), ld(u + s - 1)),
                                     _mm256_sub_pd(ld(u - s + 1), ld(u - s - 1)));
    _mm256_storeu_pd(uxx + i, _mm256_mul_pd(cx, xx));
    _mm256_storeu_pd(uyy + i, _mm256_mul_pd(cy, yy));
    _mm256_storeu_pd(uxy + i, _mm256_mul_pd(cxy, xy));
  }
  if (i < n)
    scalar::hessian_row(src + i, s, n - i, inv_h1sq, inv_h2sq, inv_4h1h2, uxx + i, uyy + i,
                        uxy + i);
}

void bracket_row(const double* axx, const double* ayy, const double* axy, const double* bxx,
                 const double* byy, const double* bxy, int n, double* out) {
  const __m256d m2 = _mm256_set1_pd(-2.0);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_mul_pd(ld(axx + i), ld(byy + i));
    r = _mm256_fmadd_pd(ld(ayy + i), ld(bxx + i), r);
    r = _mm256_fmadd_pd(_mm256_mul_pd(m2, ld(axy + i)), ld(bxy + i), r);
    _mm256_storeu_pd(out + i, r);
  }
  if (i < n) scalar::bracket_row(axx + i, ayy + i, axy + i, bxx + i, byy + i, bxy + i, n - i, out + i);
}

void axpy(int n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, ld(x + i), ld(y + i)));
    _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, ld(x + i + 4), ld(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, ld(x + i), ld(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(int n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(ld(x + i), ld(y + i), acc0);
    acc1 = _mm256_fmadd_pd(ld(x + i + 4), ld(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(ld(x + i), ld(y + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

}  // namespace shellsym::kernels::avx2

#endif
