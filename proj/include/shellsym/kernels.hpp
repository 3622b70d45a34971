#pragma once

#include <cstddef>

// Data-parallel inner loops of the finite-difference solver. Every kernel has
// a scalar reference implementation and an AVX2/FMA variant; the variant is
// chosen once at startup from the CPU features and may be overridden (tests
// run both and compare).

namespace shellsym::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

/// Row kernels work on a strided 2-D array; `src` points at the first
/// output node of the row and neighbours are addressed as src[di + dj*stride].
struct KernelTable {
  /// out[i] = cxxxx d4x + cyyyy d4y + cxxyy d2x d2y of the 13-point stencil,
  /// with the undivided differences d4x = u(-2) - 4u(-1) + 6u - 4u(1) + u(2)
  /// and d2x d2y the 9-point tensor product of (1,-2,1).
  void (*biharmonic_row)(const double* src, std::ptrdiff_t stride, int n, double cxxxx,
                         double cyyyy, double cxxyy, double* out);

  /// Centred second differences: uxx, uyy and the 4-point mixed difference.
  void (*hessian_row)(const double* src, std::ptrdiff_t stride, int n, double inv_h1sq,
                      double inv_h2sq, double inv_4h1h2, double* uxx, double* uyy, double* uxy);

  /// out[i] = axx byy + ayy bxx - 2 axy bxy
  void (*bracket_row)(const double* axx, const double* ayy, const double* axy, const double* bxx,
                      const double* byy, const double* bxy, int n, double* out);

  /// y += a x
  void (*axpy)(int n, double a, const double* x, double* y);

  double (*dot)(int n, const double* x, const double* y);
};

const KernelTable& table(Isa isa);

/// True when the running CPU can execute `isa`.
bool supported(Isa isa);

/// Best ISA available on this CPU (honours SHELLSYM_ISA=scalar|avx2 if set).
Isa detected();

/// ISA used by active(); defaults to detected().
Isa current();
/// Throws std::invalid_argument if the CPU lacks `isa`.
void select(Isa isa);

const KernelTable& active();

}  // namespace shellsym::kernels
