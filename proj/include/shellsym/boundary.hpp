#pragma once

#include <array>
#include <string>

#include "shellsym/expr.hpp"

namespace shellsym {

enum class BcKind { clamped, simply_supported };

/// Edges of the rectangle, in the order used by per-edge data.
enum class Edge { left = 0, right = 1, bottom = 2, top = 3 };  // x1=a1, x1=b1, x2=a2, x2=b2

/// Boundary data for one unknown. The Dirichlet trace is always imposed; a
/// clamped edge also prescribes the outward normal derivative (one expression
/// per edge, since the normal changes from edge to edge), a simply supported
/// edge prescribes the Laplacian.
struct FieldBc {
  BcKind kind = BcKind::clamped;
  Expr value;
  std::array<Expr, 4> normal_derivative;
  Expr laplacian;

  static FieldBc homogeneous(BcKind kind) { return FieldBc{kind, {}, {}, {}}; }
};

struct BoundaryConditions {
  FieldBc w;
  FieldBc phi;

  static BoundaryConditions homogeneous(BcKind w_kind = BcKind::clamped,
                                        BcKind phi_kind = BcKind::clamped) {
    return {FieldBc::homogeneous(w_kind), FieldBc::homogeneous(phi_kind)};
  }
};

/// Boundary data that reproduces the traces of a smooth field u: its value,
/// outward normal derivatives and Laplacian.
FieldBc exact_bc(BcKind kind, const Expr& u);

const char* to_string(BcKind kind);
BcKind bc_kind_from_string(const std::string& name);  // "clamped" | "simply_supported"

}  // namespace shellsym
