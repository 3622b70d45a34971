#pragma once

#include <cstddef>

namespace shellsym::kernels {

#define SHELLSYM_KERNEL_DECLS                                                                   \
  void biharmonic_row(const double* src, std::ptrdiff_t s, int n, double cxxxx, double cyyyy, \
                      double cxxyy, double* out);                                             \
  void hessian_row(const double* src, std::ptrdiff_t s, int n, double inv_h1sq,               \
                   double inv_h2sq, double inv_4h1h2, double* uxx, double* uyy, double* uxy); \
  void bracket_row(const double* axx, const double* ayy, const double* axy, const double* bxx, \
                   const double* byy, const double* bxy, int n, double* out);                 \
  void axpy(int n, double a, const double* x, double* y);                                     \
  double dot(int n, const double* x, const double* y);

namespace scalar {
SHELLSYM_KERNEL_DECLS
}

namespace avx2 {
SHELLSYM_KERNEL_DECLS
}

#undef SHELLSYM_KERNEL_DECLS

}  // namespace shellsym::kernels
