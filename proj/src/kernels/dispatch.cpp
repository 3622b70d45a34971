#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "shellsym/kernels.hpp"

namespace shellsym::kernels {

namespace {

constexpr KernelTable kScalar{scalar::biharmonic_row, scalar::hessian_row, scalar::bracket_row,
                              scalar::axpy, scalar::dot};
#if defined(SHELLSYM_HAVE_AVX2)
constexpr KernelTable kAvx2{avx2::biharmonic_row, avx2::hessian_row, avx2::bracket_row,
                            avx2::axpy, avx2::dot};
#endif

bool cpu_has_avx2() {
#if defined(SHELLSYM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial() {
  Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("SHELLSYM_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && best == Isa::avx2) return Isa::avx2;
  }
  return best;
}

Isa& current_ref() {
  static Isa isa = initial();
  return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

const KernelTable& table(Isa isa) {
#if defined(SHELLSYM_HAVE_AVX2)
  if (isa == Isa::avx2) {
    if (!cpu_has_avx2()) throw std::invalid_argument("AVX2 kernels requested on a CPU without AVX2/FMA");
    return kAvx2;
  }
#else
  if (isa == Isa::avx2) throw std::invalid_argument("AVX2 kernels are not compiled in");
#endif
  return kScalar;
}

Isa detected() { return initial(); }

Isa current() { return current_ref(); }

void select(Isa isa) {
  if (!supported(isa)) throw std::invalid_argument(std::string("ISA not supported: ") + to_string(isa));
  current_ref() = isa;
}

const KernelTable& active() { return table(current_ref()); }

}  // namespace shellsym::kernels
