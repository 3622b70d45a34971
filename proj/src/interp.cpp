#include "shellsym/interp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shellsym {

namespace {

constexpr int kMaxOrder = 8;

// First node of the stencil and the Lagrange weights along one axis.
int weights(double x, double a, double h, int last, int order, std::array<double, kMaxOrder>& w) {
  const double s = (x - a) / h;
  int first = static_cast<int>(std::floor(s)) - (order / 2 - 1);
  first = std::clamp(first, 0, last - order + 1);
  for (int i = 0; i < order; ++i) {
    double num = 1.0, den = 1.0;
    for (int j = 0; j < order; ++j) {
      if (j == i) continue;
      num *= s - (first + j);
      den *= static_cast<double>(i - j);
    }
    w[i] = num / den;
  }
  return first;
}

}  // namespace

Interpolator::Interpolator(const ExtendedField& u, int order) : u_(&u), order_(order) {
  if (order < 2 || order > kMaxOrder)
    throw std::invalid_argument("interpolation order must be between 2 and " + std::to_string(kMaxOrder));
  if (order > u.grid().n1 + 2 || order > u.grid().n2 + 2)
    throw std::invalid_argument("interpolation order exceeds the grid size");
}

double Interpolator::operator()(Point2 x) const {
  const Grid& g = u_->grid();
  const double tol1 = 1e-12 * g.domain.width1(), tol2 = 1e-12 * g.domain.width2();
  if (!(x.x1 >= g.domain.a1 - tol1 && x.x1 <= g.domain.b1 + tol1 && x.x2 >= g.domain.a2 - tol2 &&
        x.x2 <= g.domain.b2 + tol2))
    throw std::out_of_range("interpolation point outside the domain");
  std::array<double, kMaxOrder> w1{}, w2{};
  const int f1 = weights(x.x1, g.domain.a1, g.h1, g.n1 + 1, order_, w1);
  const int f2 = weights(x.x2, g.domain.a2, g.h2, g.n2 + 1, order_, w2);
  double total = 0.0;
  for (int j = 0; j < order_; ++j) {
    double row = 0.0;
    for (int i = 0; i < order_; ++i) row += w1[i] * u_->at(f1 + i, f2 + j);
    total += w2[j] * row;
  }
  return total;
}

}  // namespace shellsym
