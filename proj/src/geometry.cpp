#include "shellsym/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shellsym {

void Domain2D::validate() const {
  if (!(std::isfinite(a1) && std::isfinite(b1) && std::isfinite(a2) && std::isfinite(b2)))
    throw std::invalid_argument("domain bounds must be finite");
  if (!(b1 > a1) || !(b2 > a2)) throw std::invalid_argument("domain requires b1 > a1 and b2 > a2");
}

void ShellSpec::validate() const {
  domain.validate();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

void MaterialParams::validate() const {
  if (!(D > 0.0) || !(E > 0.0) || !(h > 0.0))
    throw std::invalid_argument("material parameters D, E, h must be strictly positive");
}

CurvatureTensor curvature_tensor(const ShellSpec& spec) {
  const Expr f1 = diff(spec.f, 1);
  const Expr f2 = diff(spec.f, 2);
  return {diff(f1, 1), diff(f1, 2), diff(f2, 2)};
}

namespace {

Expr mean_from(const CurvatureTensor& b) {
  std::vector<Expr> terms;
  for (int a = 1; a <= 2; ++a)
    for (int c = 1; c <= 2; ++c)
      if (kronecker(a, c) != 0.0) terms.push_back(kronecker(a, c) * b(a, c));
  return 0.5 * sum(std::move(terms));
}

// K = (1/2) e^{am} e^{bn} b_ab b_mn
Expr gauss_from(const CurvatureTensor& b) {
  std::vector<Expr> terms;
  for (int a = 1; a <= 2; ++a)
    for (int m = 1; m <= 2; ++m)
      for (int c = 1; c <= 2; ++c)
        for (int n = 1; n <= 2; ++n) {
          const double w = alternating(a, m) * alternating(c, n);
          if (w != 0.0) terms.push_back(w * (b(a, c) * b(m, n)));
        }
  return 0.5 * sum(std::move(terms));
}

}  // namespace

Expr mean_curvature(const ShellSpec& spec) { return mean_from(curvature_tensor(spec)); }

Expr gauss_curvature(const ShellSpec& spec) { return gauss_from(curvature_tensor(spec)); }

Expr reduced_load(const ShellSpec& spec, const MaterialParams& mat) {
  const Expr H = mean_curvature(spec);
  return sum({(2.0 * mat.D) * laplacian(H), spec.p});
}

ShallownessReport shallowness_check(const ShellSpec& spec, int samples) {
  spec.domain.validate();
  if (samples < 2) throw std::invalid_argument("shallowness_check needs at least 2 samples per axis");
  const Expr f1 = diff(spec.f, 1);
  const Expr f2 = diff(spec.f, 2);
  const auto& d = spec.domain;
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double y = d.a2 + d.width2() * j / (samples - 1);
    for (int i = 0; i < samples; ++i) {
      const Point2 x{d.a1 + d.width1() * i / (samples - 1), y};
      const double s = std::max(std::abs(eval(f1, x)), std::abs(eval(f2, x)));
      worst = std::max(worst, s * s);
    }
  }
  return {worst, worst <= spec.epsilon * spec.epsilon};
}

GeometryFields GeometryFields::compute(const ShellSpec& spec, const MaterialParams& mat) {
  GeometryFields g;
  g.b = curvature_tensor(spec);
  g.H = mean_from(g.b);
  g.K = gauss_from(g.b);
  g.P = sum({(2.0 * mat.D) * laplacian(g.H), spec.p});
  return g;
}

}  // namespace shellsym
