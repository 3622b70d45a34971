#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "shellsym/boundary.hpp"
#include "shellsym/geometry.hpp"

namespace shellsym {

/// Uniform grid with n1 x n2 interior nodes. Node indices run from 0 to
/// n+1 along each axis; 0 and n+1 lie on the boundary, so h = (b - a)/(n + 1).
struct Grid {
  Domain2D domain;
  int n1 = 0, n2 = 0;
  double h1 = 0.0, h2 = 0.0;

  Grid() = default;
  Grid(const Domain2D& d, int n1, int n2);
  /// Grid with `points` nodes per axis, boundary included.
  static Grid with_points(const Domain2D& d, int points) { return Grid(d, points - 2, points - 2); }

  Point2 node(int k1, int k2) const { return {domain.a1 + k1 * h1, domain.a2 + k2 * h2}; }
  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.domain.a1 == b.domain.a1 && a.domain.b1 == b.domain.b1 &&
           a.domain.a2 == b.domain.a2 && a.domain.b2 == b.domain.b2;
  }
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Values at the interior nodes, x1 fastest: value(i, j) is node (i+1, j+1).
class FieldGrid {
 public:
  FieldGrid() = default;
  explicit FieldGrid(const Grid& grid, double fill = 0.0)
      : grid_(grid), values_(grid.size(), fill) {}

  static FieldGrid sample(const Grid& grid, const Expr& e);

  const Grid& grid() const { return grid_; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(j) * grid_.n1 + i]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(j) * grid_.n1 + i]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Boundary data evaluated on a grid. Ghost nodes one step outside the
/// boundary are affine in their mirror interior node:
///   ghost = sign * mirror + offset
/// with sign +1 for clamped edges (central-difference normal derivative) and
/// -1 for simply supported edges (central-difference Laplacian).
struct DiscreteBc {
  BcKind kind = BcKind::clamped;
  double sign = 1.0;
  std::vector<double> bottom, top;  // boundary values along x2=a2 / x2=b2, k1 = 0..n1+1
  std::vector<double> left, right;  // boundary values along x1=a1 / x1=b1, k2 = 0..n2+1
  std::array<std::vector<double>, 4> ghost_offset;  // per Edge, interior tangential index

  static DiscreteBc make(const FieldBc& bc, const Grid& grid);
};

/// Field with its boundary ring and one ring of ghost nodes, stored as a
/// (n1+4) x (n2+4) array. at(k1, k2) accepts node indices -1 .. n+2.
class ExtendedField {
 public:
  ExtendedField() = default;
  explicit ExtendedField(const Grid& grid);
  /// Samples e at the interior and boundary nodes; ghosts are left at zero.
  static ExtendedField sample(const Grid& grid, const Expr& e);

  const Grid& grid() const { return grid_; }
  std::ptrdiff_t stride() const { return stride_; }
  double& at(int k1, int k2) { return data_[index(k1, k2)]; }
  double at(int k1, int k2) const { return data_[index(k1, k2)]; }
  const double* ptr(int k1, int k2) const { return data_.data() + index(k1, k2); }
  double max_abs() const;

 private:
  std::size_t index(int k1, int k2) const {
    return static_cast<std::size_t>(k2 + 1) * stride_ + static_cast<std::size_t>(k1 + 1);
  }
  Grid grid_;
  std::ptrdiff_t stride_ = 0;
  std::vector<double> data_;
};

ExtendedField extend(const FieldGrid& u, const DiscreteBc& bc);

struct Hessians {
  std::vector<double> xx, yy, xy;  // interior layout, like FieldGrid

  static Hessians zero(std::size_t n) { return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)}; }
};

/// 13-point second-order biharmonic at the interior nodes.
FieldGrid biharmonic(const ExtendedField& u);
Hessians hessian(const ExtendedField& u);
/// Discrete Monge-Ampere bracket from centred Hessians.
FieldGrid bracket(const ExtendedField& u, const ExtendedField& v);
FieldGrid bracket(const Hessians& a, const Hessians& b, const Grid& grid);

/// "x1,x2,value" with one row per node including the boundary ring, rows
/// ordered by x2 then x1, 17 significant digits.
void write_csv(std::ostream& os, const ExtendedField& u);

}  // namespace shellsym
