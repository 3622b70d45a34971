#include "shellsym/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shellsym {

const char* to_string(System s) { return s == System::marguerre ? "marguerre" : "vonkarman"; }

System system_from_string(const std::string& name) {
  if (name == "marguerre") return System::marguerre;
  if (name == "vonkarman") return System::vonkarman;
  throw std::invalid_argument("unknown system '" + name + "' (expected marguerre or vonkarman)");
}

namespace {

void check_grid(const ShellSpec& spec, const Grid& grid) {
  const auto& a = spec.domain;
  const auto& b = grid.domain;
  if (a.a1 != b.a1 || a.b1 != b.b1 || a.a2 != b.a2 || a.b2 != b.b2)
    throw GridMismatch("grid domain differs from the shell domain");
}

std::vector<double> to_vector(const FieldGrid& f) { return {f.values().begin(), f.values().end()}; }

// Midsurface with ghosts generated by the deflection's boundary rule.
ExtendedField extended_midsurface(const ShellSpec& spec, const Grid& grid, BcKind w_kind) {
  return extend(FieldGrid::sample(grid, spec.f), DiscreteBc::make(exact_bc(w_kind, spec.f), grid));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Problem make_marguerre(const ShellSpec& spec, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc, DataMode mode) {
  spec.validate();
  mat.validate();
  check_grid(spec, grid);
  Problem pr;
  pr.system = System::marguerre;
  pr.mat = mat;
  pr.grid = grid;
  pr.load = to_vector(FieldGrid::sample(grid, spec.p));
  pr.rhs2.assign(grid.size(), 0.0);
  if (mode == DataMode::matched) {
    pr.b = hessian(extended_midsurface(spec, grid, bc.w.kind));
  } else {
    const CurvatureTensor b = curvature_tensor(spec);
    pr.b = {to_vector(FieldGrid::sample(grid, b.b11)), to_vector(FieldGrid::sample(grid, b.b22)),
            to_vector(FieldGrid::sample(grid, b.b12))};
  }
  pr.w_bc = DiscreteBc::make(bc.w, grid);
  pr.phi_bc = DiscreteBc::make(bc.phi, grid);
  return pr;
}

Problem make_vonkarman(const ShellSpec& spec, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc, DataMode mode) {
  spec.validate();
  mat.validate();
  check_grid(spec, grid);
  const BoundaryConditions tbc = transform_boundary_data(bc, spec);
  if (mode == DataMode::symbolic) return make_vonkarman(to_vonkarman(spec, mat), mat, grid, tbc);

  Problem pr;
  pr.system = System::vonkarman;
  pr.mat = mat;
  pr.grid = grid;
  const ExtendedField ef = extended_midsurface(spec, grid, bc.w.kind);
  const FieldGrid bf = biharmonic(ef);
  const FieldGrid p = FieldGrid::sample(grid, spec.p);
  const FieldGrid kf = bracket(ef, ef);
  pr.load.resize(grid.size());
  pr.rhs2.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    pr.load[k] = mat.D * bf.values()[k] + p.values()[k];
    pr.rhs2[k] = 0.5 * kf.values()[k];
  }
  pr.b = Hessians::zero(grid.size());
  pr.w_bc = DiscreteBc::make(tbc.w, grid);
  pr.phi_bc = DiscreteBc::make(tbc.phi, grid);
  return pr;
}

Problem make_vonkarman(const VonKarmanForm& form, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc) {
  mat.validate();
  Problem pr;
  pr.system = System::vonkarman;
  pr.mat = mat;
  pr.grid = grid;
  pr.load = to_vector(FieldGrid::sample(grid, form.P));
  pr.rhs2 = to_vector(FieldGrid::sample(grid, form.K));
  pr.b = Hessians::zero(grid.size());
  pr.w_bc = DiscreteBc::make(bc.w, grid);
  pr.phi_bc = DiscreteBc::make(bc.phi, grid);
  return pr;
}

Residual residual(const Problem& pr, const FieldGrid& w, const FieldGrid& phi, double load_factor) {
  const Grid& g = pr.grid;
  if (!(w.grid() == g) || !(phi.grid() == g) || pr.load.size() != g.size() ||
      pr.rhs2.size() != g.size() || pr.b.xx.size() != g.size())
    throw GridMismatch("fields and problem data live on different grids");

  const ExtendedField ew = extend(w, pr.w_bc);
  const ExtendedField ep = extend(phi, pr.phi_bc);
  const Hessians hw = hessian(ew);
  const Hessians hp = hessian(ep);
  const FieldGrid bw = biharmonic(ew);
  const FieldGrid bp = biharmonic(ep);
  const FieldGrid wp = bracket(hw, hp, g);
  const FieldGrid ww = bracket(hw, hw, g);
  const bool marguerre = pr.system == System::marguerre;
  FieldGrid bpb(g), bwb(g);
  if (marguerre) {
    bpb = bracket(pr.b, hp, g);
    bwb = bracket(pr.b, hw, g);
  }

  const double D = pr.mat.D;
  const double inv_eh = 1.0 / (pr.mat.E * pr.mat.h);
  Residual r{FieldGrid(g), FieldGrid(g), 0.0};
  auto r1 = r.r1.values();
  auto r2 = r.r2.values();
  for (std::size_t k = 0; k < g.size(); ++k) {
    r1[k] = D * bw.values()[k] - wp.values()[k] - load_factor * pr.load[k];
    r2[k] = inv_eh * bp.values()[k] + 0.5 * ww.values()[k] - pr.rhs2[k];
    if (marguerre) {
      r1[k] -= bpb.values()[k];
      r2[k] += bwb.values()[k];
    }
  }

  // Roundoff scale: absolute stencil weight times field size, plus the
  // magnitudes of the bilinear terms and right-hand sides.
  const double q1 = 1.0 / std::pow(g.h1, 4), q2 = 1.0 / std::pow(g.h2, 4);
  const double stencil = 16.0 * q1 + 16.0 * q2 + 32.0 / (g.h1 * g.h1 * g.h2 * g.h2);
  auto hmax = [](const Hessians& h) { return std::max({max_abs(h.xx), max_abs(h.yy), max_abs(h.xy)}); };
  const double hwm = hmax(hw) + (marguerre ? hmax(pr.b) : 0.0);
  const double hpm = hmax(hp);
  r.scale = std::max({D * stencil * ew.max_abs() + 4.0 * hwm * hpm + std::abs(load_factor) * max_abs(pr.load),
                      inv_eh * stencil * ep.max_abs() + 4.0 * hwm * hwm + max_abs(pr.rhs2)});
  return r;
}

BandedMatrix jacobian(const Problem& pr, const FieldGrid& w, const FieldGrid& phi) {
  const Grid& g = pr.grid;
  const int n1 = g.n1, n2 = g.n2;
  const int band = 4 * n1 + 1;
  BandedMatrix J(2 * n1 * n2, band, band);

  const Hessians hw = hessian(extend(w, pr.w_bc));
  const Hessians hp = hessian(extend(phi, pr.phi_bc));
  const bool marguerre = pr.system == System::marguerre;

  const double h1sq = g.h1 * g.h1, h2sq = g.h2 * g.h2;
  const double cx = 1.0 / (h1sq * h1sq), cy = 1.0 / (h2sq * h2sq), cxy = 2.0 / (h1sq * h2sq);
  struct Tap {
    int di, dj;
    double c;
  };
  const Tap bih[] = {{0, 0, 6 * cx + 6 * cy + 4 * cxy},
                     {-1, 0, -4 * cx - 2 * cxy}, {1, 0, -4 * cx - 2 * cxy},
                     {0, -1, -4 * cy - 2 * cxy}, {0, 1, -4 * cy - 2 * cxy},
                     {-2, 0, cx}, {2, 0, cx}, {0, -2, cy}, {0, 2, cy},
                     {-1, -1, cxy}, {1, -1, cxy}, {-1, 1, cxy}, {1, 1, cxy}};

  auto unknown = [&](int i, int j, int c) { return 2 * (j * n1 + i) + c; };

  // Adds coef * u(node k1,k2) for field c to row `row`, folding ghosts onto
  // their mirror nodes and dropping boundary nodes (fixed data).
  auto add = [&](int row, int k1, int k2, int c, double coef) {
    const double sign = c == 0 ? pr.w_bc.sign : pr.phi_bc.sign;
    if (k1 == -1) {
      k1 = 1;
      coef *= sign;
    } else if (k1 == n1 + 2) {
      k1 = n1;
      coef *= sign;
    }
    if (k2 == -1) {
      k2 = 1;
      coef *= sign;
    } else if (k2 == n2 + 2) {
      k2 = n2;
      coef *= sign;
    }
    if (k1 < 1 || k1 > n1 || k2 < 1 || k2 > n2) return;
    J.add(row, unknown(k1 - 1, k2 - 1, c), coef);
  };

  // [g, dv] = gxx dv,yy + gyy dv,xx - 2 gxy dv,xy
  auto add_bracket = [&](int row, int k1, int k2, int c, double gxx, double gyy, double gxy, double s) {
    add(row, k1 - 1, k2, c, s * gyy / h1sq);
    add(row, k1 + 1, k2, c, s * gyy / h1sq);
    add(row, k1, k2 - 1, c, s * gxx / h2sq);
    add(row, k1, k2 + 1, c, s * gxx / h2sq);
    add(row, k1, k2, c, s * (-2.0 * gyy / h1sq - 2.0 * gxx / h2sq));
    const double m = s * (-2.0 * gxy) / (4.0 * g.h1 * g.h2);
    add(row, k1 + 1, k2 + 1, c, m);
    add(row, k1 - 1, k2 - 1, c, m);
    add(row, k1 + 1, k2 - 1, c, -m);
    add(row, k1 - 1, k2 + 1, c, -m);
  };

  const double D = pr.mat.D;
  const double inv_eh = 1.0 / (pr.mat.E * pr.mat.h);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * n1 + i;
      const int k1 = i + 1, k2 = j + 1;
      const int row1 = unknown(i, j, 0), row2 = unknown(i, j, 1);
      double axx = hw.xx[k], ayy = hw.yy[k], axy = hw.xy[k];
      if (marguerre) {
        axx += pr.b.xx[k];
        ayy += pr.b.yy[k];
        axy += pr.b.xy[k];
      }
      for (const auto& t : bih) {
        add(row1, k1 + t.di, k2 + t.dj, 0, D * t.c);
        add(row2, k1 + t.di, k2 + t.dj, 1, inv_eh * t.c);
      }
      add_bracket(row1, k1, k2, 0, hp.xx[k], hp.yy[k], hp.xy[k], -1.0);
      add_bracket(row1, k1, k2, 1, axx, ayy, axy, -1.0);
      add_bracket(row2, k1, k2, 0, axx, ayy, axy, 1.0);
    }
  return J;
}

namespace {

struct StepOutcome {
  bool converged = false;
  std::vector<double> history;
  double final_residual = 0.0;
  double scale = 0.0;
};

// Newton at a fixed load factor with step halving, so the residual history is
// strictly decreasing. Converged when the residual reaches tol_abs, or when it
// is within the roundoff bound tol_abs + tol_rel * scale and the last full
// Newton correction was negligible.
StepOutcome newton_step(const Problem& pr, FieldGrid& w, FieldGrid& phi, double lambda,
                        const SolveOptions& opt) {
  constexpr int max_halvings = 12;
  StepOutcome out;
  const std::size_t n = pr.grid.size();
  Residual r = residual(pr, w, phi, lambda);
  double rn = r.norm_inf();
  if (!std::isfinite(rn)) return out;
  double last_correction = std::numeric_limits<double>::infinity();
  std::vector<double> delta(2 * n);
  FieldGrid wt = w, pt = phi;

  while (true) {
    out.history.push_back(rn);
    out.final_residual = rn;
    out.scale = r.scale;
    const double size = std::max({1.0, w.max_abs(), phi.max_abs()});
    const double bound = opt.tol_abs + opt.tol_rel * r.scale;
    if (rn <= opt.tol_abs || (rn <= bound && last_correction <= 1e-10 * size)) {
      out.converged = true;
      return out;
    }
    if (static_cast<int>(out.history.size()) >= opt.max_iter) return out;

    for (std::size_t k = 0; k < n; ++k) {
      delta[2 * k] = -r.r1.values()[k];
      delta[2 * k + 1] = -r.r2.values()[k];
    }
    BandedLU(jacobian(pr, w, phi)).solve(delta);
    double correction = 0.0;
    for (double d : delta) correction = std::max(correction, std::abs(d));

    // Inside the roundoff band only the full step is tried; halving would just
    // chase noise.
    const int halvings = rn <= bound ? 0 : max_halvings;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls <= halvings && !accepted; ++ls, alpha *= 0.5) {
      auto wv = wt.values();
      auto pv = pt.values();
      for (std::size_t k = 0; k < n; ++k) {
        wv[k] = w.values()[k] + alpha * delta[2 * k];
        pv[k] = phi.values()[k] + alpha * delta[2 * k + 1];
      }
      Residual rt = residual(pr, wt, pt, lambda);
      const double tn = rt.norm_inf();
      if (std::isfinite(tn) && tn < rn) {
        accepted = true;
        std::swap(w, wt);
        std::swap(phi, pt);
        r = std::move(rt);
        rn = tn;
        last_correction = ls == 0 ? correction : std::numeric_limits<double>::infinity();
      }
    }
    if (!accepted) {
      // No decrease along the Newton direction: either roundoff has been
      // reached or the iteration has stalled.
      out.converged = rn <= bound && correction <= 1e-8 * size;
      return out;
    }
  }
}

}  // namespace

SolveResult newton_solve(const Problem& pr, const FieldGrid& w0, const FieldGrid& phi0,
                         const SolveOptions& opt) {
  if (!(w0.grid() == pr.grid) || !(phi0.grid() == pr.grid))
    throw GridMismatch("initial fields live on a different grid");
  if (opt.max_iter < 1 || opt.max_load_steps < 1)
    throw std::invalid_argument("max_iter and max_load_steps must be positive");

  SolveResult best{w0, phi0, {}};
  int total = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int steps = 1; steps <= opt.max_load_steps; steps *= 2) {
    FieldGrid w = w0, phi = phi0;
    StepOutcome last;
    bool ok = true;
    int s = 1;
    for (; s <= steps; ++s) {
      const double lambda = std::ldexp(1.0, s - steps);  // geometric: ..., 1/4, 1/2, 1
      last = newton_step(pr, w, phi, lambda, opt);
      total += static_cast<int>(last.history.size());
      if (!last.converged) {
        ok = false;
        break;
      }
    }
    // A failed attempt is only comparable if it reached the full load.
    const bool full_load = ok || s == steps;
    if (ok || (full_load && last.final_residual < best_res)) {
      best.w = w;
      best.phi = phi;
      best.report.converged = ok;
      best.report.residual_norm_history = last.history;
      best.report.final_residual_inf = last.final_residual;
      best.report.residual_scale = last.scale;
      best.report.load_steps_used = steps;
      best_res = last.final_residual;
    }
    if (ok) break;
    if (steps * 2 > opt.max_load_steps) break;
  }
  best.report.iterations = total;
  return best;
}

}  // namespace shellsym
