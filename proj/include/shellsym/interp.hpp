#pragma once

#include "shellsym/grid.hpp"

namespace shellsym {

/// Tensor-product Lagrange interpolation of a grid field (interior nodes plus
/// the boundary ring) at arbitrary points of the closed domain. `order` is the
/// number of nodes per axis in the local stencil: 4 is bicubic, 6 quintic.
/// Near the boundary the stencil is shifted inward rather than extrapolated.
class Interpolator {
 public:
  Interpolator(const ExtendedField& u, int order = 6);

  /// Throws std::out_of_range for points outside the domain.
  double operator()(Point2 x) const;
  int order() const { return order_; }

 private:
  const ExtendedField* u_;
  int order_;
};

}  // namespace shellsym
