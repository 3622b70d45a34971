#include "kernels_impl.hpp"

namespace shellsym::kernels::scalar {

void biharmonic_row(const double* src, std::ptrdiff_t s, int n, double cxxxx, double cyyyy,
                    double cxxyy, double* out) {
  for (int i = 0; i < n; ++i) {
    const double* u = src + i;
    const double d4x = u[-2] - 4.0 * u[-1] + 6.0 * u[0] - 4.0 * u[1] + u[2];
    const double d4y = u[-2 * s] - 4.0 * u[-s] + 6.0 * u[0] - 4.0 * u[s] + u[2 * s];
    const double dn = u[-s - 1] - 2.0 * u[-s] + u[-s + 1];
    const double dc = u[-1] - 2.0 * u[0] + u[1];
    const double dp = u[s - 1] - 2.0 * u[s] + u[s + 1];
    const double d2x2y = dn - 2.0 * dc + dp;
    out[i] = cxxxx * d4x + cyyyy * d4y + cxxyy * d2x2y;
  }
}

void hessian_row(const double* src, std::ptrdiff_t s, int n, double inv_h1sq, double inv_h2sq,
                 double inv_4h1h2, double* uxx, double* uyy, double* uxy) {
  for (int i = 0; i < n; ++i) {
    const double* u = src + i;
    uxx[i] = inv_h1sq * (u[-1] - 2.0 * u[0] + u[1]);
    uyy[i] = inv_h2sq * (u[-s] - 2.0 * u[0] + u[s]);
    uxy[i] = inv_4h1h2 * ((u[s + 1] - u[s - 1]) - (u[-s + 1] - u[-s - 1]));
  }
}

void bracket_row(const double* axx, const double* ayy, const double* axy, const double* bxx,
                 const double* byy, const double* bxy, int n, double* out) {
  for (int i = 0; i < n; ++i) out[i] = axx[i] * byy[i] + ayy[i] * bxx[i] - 2.0 * axy[i] * bxy[i];
}

void axpy(int n, double a, const double* x, double* y) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(int n, const double* x, const double* y) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace shellsym::kernels::scalar
