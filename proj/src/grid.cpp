#include "shellsym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "shellsym/kernels.hpp"

namespace shellsym {

Grid::Grid(const Domain2D& d, int n1_, int n2_) : domain(d), n1(n1_), n2(n2_) {
  d.validate();
  if (n1 < 9 || n2 < 9)
    throw std::invalid_argument("grid needs at least 9 interior nodes per axis, got " +
                                std::to_string(n1) + " x " + std::to_string(n2));
  h1 = d.width1() / (n1 + 1);
  h2 = d.width2() / (n2 + 1);
}

FieldGrid FieldGrid::sample(const Grid& grid, const Expr& e) {
  FieldGrid f(grid);
  for (int j = 0; j < grid.n2; ++j)
    for (int i = 0; i < grid.n1; ++i) f(i, j) = eval(e, grid.node(i + 1, j + 1));
  return f;
}

double FieldGrid::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DiscreteBc DiscreteBc::make(const FieldBc& bc, const Grid& g) {
  DiscreteBc d;
  d.kind = bc.kind;
  d.sign = bc.kind == BcKind::clamped ? 1.0 : -1.0;
  for (int k = 0; k <= g.n1 + 1; ++k) {
    d.bottom.push_back(eval(bc.value, g.node(k, 0)));
    d.top.push_back(eval(bc.value, g.node(k, g.n2 + 1)));
  }
  for (int k = 0; k <= g.n2 + 1; ++k) {
    d.left.push_back(eval(bc.value, g.node(0, k)));
    d.right.push_back(eval(bc.value, g.node(g.n1 + 1, k)));
  }

  // boundary node of each edge for tangential index t, plus the edge's
  // values, normal spacing and tangential spacing
  struct EdgeInfo {
    Edge edge;
    const std::vector<double>* values;
    double hn, ht;
    int count;
  };
  const EdgeInfo edges[] = {{Edge::left, &d.left, g.h1, g.h2, g.n2},
                            {Edge::right, &d.right, g.h1, g.h2, g.n2},
                            {Edge::bottom, &d.bottom, g.h2, g.h1, g.n1},
                            {Edge::top, &d.top, g.h2, g.h1, g.n1}};
  auto boundary_node = [&](Edge e, int t) {
    switch (e) {
      case Edge::left: return g.node(0, t);
      case Edge::right: return g.node(g.n1 + 1, t);
      case Edge::bottom: return g.node(t, 0);
      case Edge::top: return g.node(t, g.n2 + 1);
    }
    return Point2{};
  };
  for (const auto& info : edges) {
    auto& off = d.ghost_offset[static_cast<int>(info.edge)];
    off.resize(info.count);
    const auto& vals = *info.values;
    for (int t = 1; t <= info.count; ++t) {
      const Point2 x = boundary_node(info.edge, t);
      if (bc.kind == BcKind::clamped) {
        off[t - 1] = 2.0 * info.hn * eval(bc.normal_derivative[static_cast<int>(info.edge)], x);
      } else {
        const double tangential = (vals[t - 1] - 2.0 * vals[t] + vals[t + 1]) / (info.ht * info.ht);
        off[t - 1] = 2.0 * vals[t] + info.hn * info.hn * (eval(bc.laplacian, x) - tangential);
      }
    }
  }
  return d;
}

ExtendedField::ExtendedField(const Grid& grid)
    : grid_(grid),
      stride_(grid.n1 + 4),
      data_(static_cast<std::size_t>(grid.n1 + 4) * (grid.n2 + 4), 0.0) {}

ExtendedField ExtendedField::sample(const Grid& grid, const Expr& e) {
  ExtendedField u(grid);
  for (int k2 = 0; k2 <= grid.n2 + 1; ++k2)
    for (int k1 = 0; k1 <= grid.n1 + 1; ++k1) u.at(k1, k2) = eval(e, grid.node(k1, k2));
  return u;
}

double ExtendedField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

ExtendedField extend(const FieldGrid& u, const DiscreteBc& bc) {
  const Grid& g = u.grid();
  if (bc.left.size() != static_cast<std::size_t>(g.n2 + 2) ||
      bc.bottom.size() != static_cast<std::size_t>(g.n1 + 2))
    throw GridMismatch("boundary data was discretized on a different grid");
  ExtendedField e(g);
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) e.at(i + 1, j + 1) = u(i, j);
  for (int k = 0; k <= g.n1 + 1; ++k) {
    e.at(k, 0) = bc.bottom[k];
    e.at(k, g.n2 + 1) = bc.top[k];
  }
  for (int k = 0; k <= g.n2 + 1; ++k) {
    e.at(0, k) = bc.left[k];
    e.at(g.n1 + 1, k) = bc.right[k];
  }
  const auto& go = bc.ghost_offset;
  for (int t = 1; t <= g.n2; ++t) {
    e.at(-1, t) = bc.sign * e.at(1, t) + go[static_cast<int>(Edge::left)][t - 1];
    e.at(g.n1 + 2, t) = bc.sign * e.at(g.n1, t) + go[static_cast<int>(Edge::right)][t - 1];
  }
  for (int t = 1; t <= g.n1; ++t) {
    e.at(t, -1) = bc.sign * e.at(t, 1) + go[static_cast<int>(Edge::bottom)][t - 1];
    e.at(t, g.n2 + 2) = bc.sign * e.at(t, g.n2) + go[static_cast<int>(Edge::top)][t - 1];
  }
  return e;
}

FieldGrid biharmonic(const ExtendedField& u) {
  const Grid& g = u.grid();
  const auto& k = kernels::active();
  const double h1sq = g.h1 * g.h1, h2sq = g.h2 * g.h2;
  FieldGrid out(g);
  for (int j = 0; j < g.n2; ++j)
    k.biharmonic_row(u.ptr(1, j + 1), u.stride(), g.n1, 1.0 / (h1sq * h1sq), 1.0 / (h2sq * h2sq),
                     2.0 / (h1sq * h2sq), &out(0, j));
  return out;
}

Hessians hessian(const ExtendedField& u) {
  const Grid& g = u.grid();
  const auto& k = kernels::active();
  Hessians h = Hessians::zero(g.size());
  for (int j = 0; j < g.n2; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * g.n1;
    k.hessian_row(u.ptr(1, j + 1), u.stride(), g.n1, 1.0 / (g.h1 * g.h1), 1.0 / (g.h2 * g.h2),
                  1.0 / (4.0 * g.h1 * g.h2), &h.xx[row], &h.yy[row], &h.xy[row]);
  }
  return h;
}

FieldGrid bracket(const Hessians& a, const Hessians& b, const Grid& g) {
  if (a.xx.size() != g.size() || b.xx.size() != g.size())
    throw GridMismatch("bracket operands live on different grids");
  FieldGrid out(g);
  const auto& k = kernels::active();
  for (int j = 0; j < g.n2; ++j) {
    const std::size_t r = static_cast<std::size_t>(j) * g.n1;
    k.bracket_row(&a.xx[r], &a.yy[r], &a.xy[r], &b.xx[r], &b.yy[r], &b.xy[r], g.n1, &out(0, j));
  }
  return out;
}

FieldGrid bracket(const ExtendedField& u, const ExtendedField& v) {
  if (!(u.grid() == v.grid())) throw GridMismatch("bracket operands live on different grids");
  return bracket(hessian(u), hessian(v), u.grid());
}

void write_csv(std::ostream& os, const ExtendedField& u) {
  const Grid& g = u.grid();
  os << "x1,x2,value\n";
  for (int k2 = 0; k2 <= g.n2 + 1; ++k2)
    for (int k1 = 0; k1 <= g.n1 + 1; ++k1) {
      const Point2 x = g.node(k1, k2);
      os << fmt::format("{:.17g},{:.17g},{:.17g}\n", x.x1, x.x2, u.at(k1, k2));
    }
}

}  // namespace shellsym
