#pragma once

#include "shellsym/expr.hpp"

namespace shellsym {

/// Rectangle [a1,b1] x [a2,b2].
struct Domain2D {
  double a1 = 0.0, b1 = 1.0;
  double a2 = 0.0, b2 = 1.0;

  void validate() const;
  double width1() const { return b1 - a1; }
  double width2() const { return b2 - a2; }
  bool contains(Point2 x) const { return x.x1 >= a1 && x.x1 <= b1 && x.x2 >= a2 && x.x2 <= b2; }
};

/// Midsurface x3 = f(x1,x2), transverse load p and the shallowness bound.
struct ShellSpec {
  Expr f;
  Expr p;
  Domain2D domain;
  double epsilon = 0.2;

  void validate() const;
};

struct MaterialParams {
  double D = 1.0;  // bending rigidity
  double E = 1.0;  // Young's modulus
  double h = 1.0;  // thickness

  void validate() const;
};

// Flat-metric constants of the shallow theory.
constexpr double kronecker(int a, int b) { return a == b ? 1.0 : 0.0; }
/// e^{12} = 1, e^{21} = -1, zero on the diagonal. Indices are 1-based.
constexpr double alternating(int a, int b) { return a == b ? 0.0 : (a < b ? 1.0 : -1.0); }

/// Curvature tensor b_ab = f,ab (b12 stored once).
struct CurvatureTensor {
  Expr b11, b12, b22;

  const Expr& operator()(int a, int b) const {
    if (a == 1 && b == 1) return b11;
    if (a == 2 && b == 2) return b22;
    return b12;
  }
};

CurvatureTensor curvature_tensor(const ShellSpec& spec);
Expr mean_curvature(const ShellSpec& spec);
Expr gauss_curvature(const ShellSpec& spec);
/// P = 2 D (H,11 + H,22) + p, i.e. D times the biharmonic of f, plus p.
Expr reduced_load(const ShellSpec& spec, const MaterialParams& mat);

struct ShallownessReport {
  double max_slope_product = 0.0;
  bool ok = true;
};

/// Maximum of max(|f,1|,|f,2|)^2 over a samples x samples grid covering the
/// closed domain. Non-shallow input is reported, never rejected.
ShallownessReport shallowness_check(const ShellSpec& spec, int samples = 201);

/// Symbolic geometric quantities of a shell, computed once.
struct GeometryFields {
  CurvatureTensor b;
  Expr H;
  Expr K;
  Expr P;

  static GeometryFields compute(const ShellSpec& spec, const MaterialParams& mat);
};

}  // namespace shellsym
