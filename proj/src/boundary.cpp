#include "shellsym/boundary.hpp"

#include <stdexcept>

namespace shellsym {

FieldBc exact_bc(BcKind kind, const Expr& u) {
  const Expr u1 = diff(u, 1);
  const Expr u2 = diff(u, 2);
  FieldBc bc;
  bc.kind = kind;
  bc.value = u;
  bc.normal_derivative = {-u1, u1, -u2, u2};
  bc.laplacian = laplacian(u);
  return bc;
}

const char* to_string(BcKind kind) {
  switch (kind) {
    case BcKind::clamped: return "clamped";
    case BcKind::simply_supported: return "simply_supported";
  }
  return "unknown";
}

BcKind bc_kind_from_string(const std::string& name) {
  if (name == "clamped") return BcKind::clamped;
  if (name == "simply_supported") return BcKind::simply_supported;
  throw std::invalid_argument("unknown boundary condition kind '" + name + "'");
}

}  // namespace shellsym
