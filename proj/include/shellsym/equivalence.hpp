#pragma once

#include <array>

#include "shellsym/boundary.hpp"
#include "shellsym/geometry.hpp"

namespace shellsym {

/// Right-hand sides of the nonhomogeneous von Karman system obtained from a
/// Marguerre problem by the substitution w~ = w + f:
///
///   D Lap^2 w~ - [w~, Phi]             = P
///   (1/Eh) Lap^2 Phi + (1/2)[w~, w~]   = K
struct VonKarmanForm {
  Expr P;
  Expr K;
  Expr shift;  // f
};

VonKarmanForm to_vonkarman(const ShellSpec& spec, const MaterialParams& mat);

/// Maps boundary data for (w, Phi) to data for (w + f, Phi) on the rectangle.
BoundaryConditions transform_boundary_data(const BoundaryConditions& bc, const ShellSpec& spec);

/// Fourth-order material tensors of an anisotropic shell, indexed with
/// 1-based (a, b, m, n).
struct AnisotropicParams {
  std::array<double, 16> D{};
  std::array<double, 16> E{};

  static constexpr int flat(int a, int b, int m, int n) {
    return (((a - 1) * 2 + (b - 1)) * 2 + (m - 1)) * 2 + (n - 1);
  }
  double& d(int a, int b, int m, int n) { return D[flat(a, b, m, n)]; }
  double d(int a, int b, int m, int n) const { return D[flat(a, b, m, n)]; }
  double& e(int a, int b, int m, int n) { return E[flat(a, b, m, n)]; }
  double e(int a, int b, int m, int n) const { return E[flat(a, b, m, n)]; }

  /// D^{abmn} = D delta^{ab} delta^{mn}, E^{abmn} = (1/Eh) delta^{ab} delta^{mn}.
  static AnisotropicParams isotropic(const MaterialParams& mat);

  /// Throws std::invalid_argument unless both tensors are symmetric under
  /// a<->b, m<->n and (ab)<->(mn).
  void validate() const;
};

struct AnisotropicRhs {
  Expr rhs1;  // D^{abmn} f,abmn + p
  Expr rhs2;  // K
};

AnisotropicRhs anisotropic_rhs(const AnisotropicParams& aniso, const ShellSpec& spec);

struct ResidualExprs {
  Expr r1;
  Expr r2;
};

/// Continuous Marguerre residuals of trial fields (w, Phi).
ResidualExprs marguerre_residual(const Expr& w, const Expr& phi, const ShellSpec& spec,
                                 const MaterialParams& mat);

/// Continuous von Karman residuals of (w~, Phi) with right-hand sides from form.
ResidualExprs vonkarman_residual(const Expr& wt, const Expr& phi, const VonKarmanForm& form,
                                 const MaterialParams& mat);

}  // namespace shellsym
