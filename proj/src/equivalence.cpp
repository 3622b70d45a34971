#include "shellsym/equivalence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shellsym {

VonKarmanForm to_vonkarman(const ShellSpec& spec, const MaterialParams& mat) {
  return {reduced_load(spec, mat), gauss_curvature(spec), spec.f};
}

BoundaryConditions transform_boundary_data(const BoundaryConditions& bc, const ShellSpec& spec) {
  const Expr f1 = diff(spec.f, 1);
  const Expr f2 = diff(spec.f, 2);
  // outward normals: left -x1, right +x1, bottom -x2, top +x2
  const std::array<Expr, 4> df_dn = {-f1, f1, -f2, f2};

  BoundaryConditions out = bc;
  FieldBc& w = out.w;
  switch (w.kind) {
    case BcKind::clamped:
      for (int e = 0; e < 4; ++e) w.normal_derivative[e] = w.normal_derivative[e] + df_dn[e];
      break;
    case BcKind::simply_supported: w.laplacian = w.laplacian + laplacian(spec.f); break;
    default: throw std::invalid_argument("unsupported boundary condition kind");
  }
  w.value = w.value + spec.f;
  return out;
}

AnisotropicParams AnisotropicParams::isotropic(const MaterialParams& mat) {
  AnisotropicParams a;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n) {
          const double dd = kronecker(i, j) * kronecker(m, n);
          a.d(i, j, m, n) = mat.D * dd;
          a.e(i, j, m, n) = dd / (mat.E * mat.h);
        }
  return a;
}

void AnisotropicParams::validate() const {
  auto check = [](const std::array<double, 16>& t, const char* name) {
    double scale = 0.0;
    for (double v : t) {
      if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " tensor is not finite");
      scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * scale;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int m = 1; m <= 2; ++m)
          for (int n = 1; n <= 2; ++n) {
            const double v = t[flat(a, b, m, n)];
            if (std::abs(v - t[flat(b, a, m, n)]) > tol || std::abs(v - t[flat(a, b, n, m)]) > tol ||
                std::abs(v - t[flat(m, n, a, b)]) > tol)
              throw std::invalid_argument(std::string(name) + " tensor violates the index symmetries");
          }
  };
  check(D, "D");
  check(E, "E");
}

AnisotropicRhs anisotropic_rhs(const AnisotropicParams& aniso, const ShellSpec& spec) {
  aniso.validate();
  // f,ab and f,abmn for all index combinations
  std::array<Expr, 2> d1 = {diff(spec.f, 1), diff(spec.f, 2)};
  std::vector<Expr> terms;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      const Expr fab = diff(d1[a - 1], b);
      for (int m = 1; m <= 2; ++m) {
        const Expr fabm = diff(fab, m);
        for (int n = 1; n <= 2; ++n) {
          const double c = aniso.d(a, b, m, n);
          if (c != 0.0) terms.push_back(c * diff(fabm, n));
        }
      }
    }
  terms.push_back(spec.p);
  return {sum(std::move(terms)), gauss_curvature(spec)};
}

namespace {

// e^{am} e^{bn} b_ab u,mn
Expr curvature_bracket(const CurvatureTensor& b, const Expr& u) {
  const Expr u1 = diff(u, 1), u2 = diff(u, 2);
  return sum({b.b11 * diff(u2, 2), b.b22 * diff(u1, 1), -2.0 * (b.b12 * diff(u1, 2))});
}

}  // namespace

ResidualExprs marguerre_residual(const Expr& w, const Expr& phi, const ShellSpec& spec,
                                 const MaterialParams& mat) {
  const CurvatureTensor b = curvature_tensor(spec);
  return {sum({mat.D * biharmonic(w), -bracket(w, phi), -curvature_bracket(b, phi), -spec.p}),
          sum({(1.0 / (mat.E * mat.h)) * biharmonic(phi), 0.5 * bracket(w, w),
               curvature_bracket(b, w)})};
}

ResidualExprs vonkarman_residual(const Expr& wt, const Expr& phi, const VonKarmanForm& form,
                                 const MaterialParams& mat) {
  return {sum({mat.D * biharmonic(wt), -bracket(wt, phi), -form.P}),
          sum({(1.0 / (mat.E * mat.h)) * biharmonic(phi), 0.5 * bracket(wt, wt), -form.K})};
}

}  // namespace shellsym
