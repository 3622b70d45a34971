#include "shellsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "shellsym/interp.hpp"
#include "shellsym/random.hpp"

namespace shellsym {

EquivalenceResult verify_equivalence_detailed(const ShellSpec& spec, const MaterialParams& mat,
                                              const Grid& grid, const BoundaryConditions& bc,
                                              const EquivalenceOptions& options) {
  const Problem pm = make_marguerre(spec, mat, grid, bc, DataMode::matched);
  const Problem pv = make_vonkarman(spec, mat, grid, bc, DataMode::matched);
  EquivalenceResult out{{}, newton_solve(pm, options.solve), newton_solve(pv, options.solve)};
  if (!out.marguerre.report.converged) throw SolverError("Marguerre solve did not converge");
  if (!out.vonkarman.report.converged) throw SolverError("von Karman solve did not converge");

  const FieldGrid f = FieldGrid::sample(grid, spec.f);
  auto& r = out.report;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double wt = out.marguerre.w.values()[k] + f.values()[k];
    r.max_equivalence_gap_w = std::max(r.max_equivalence_gap_w, std::abs(wt - out.vonkarman.w.values()[k]));
    r.max_equivalence_gap_phi = std::max(
        r.max_equivalence_gap_phi, std::abs(out.marguerre.phi.values()[k] - out.vonkarman.phi.values()[k]));
  }
  r.pass["equivalence"] =
      r.max_equivalence_gap_w <= options.gap_tol && r.max_equivalence_gap_phi <= options.gap_tol;
  return out;
}

VerificationReport verify_equivalence(const ShellSpec& spec, const MaterialParams& mat,
                                      const Grid& grid, const BoundaryConditions& bc,
                                      const EquivalenceOptions& options) {
  return verify_equivalence_detailed(spec, mat, grid, bc, options).report;
}

Point2 homothetic_flow(const Generator& gen, double t, Point2 x) {
  // In z = x1 + i x2 the field xi is z' = lambda z + beta.
  const std::complex<double> lambda(gen.C1, -gen.C2), beta(gen.C3, gen.C4), z(x.x1, x.x2);
  std::complex<double> out;
  if (std::abs(lambda) * std::abs(t) < 1e-8) {
    // series of (e^{lambda t} - 1)/lambda to second order
    const std::complex<double> lt = lambda * t;
    out = std::exp(lt) * z + beta * t * (1.0 + lt / 2.0 + lt * lt / 6.0);
  } else {
    const std::complex<double> e = std::exp(lambda * t);
    out = e * z + beta * (e - 1.0) / lambda;
  }
  return {out.real(), out.imag()};
}

namespace {

struct Derivs {
  double xx, yy, xy, bih;
};

// Finite differences of g around y with spacing H.
template <class G>
Derivs differences(const G& g, Point2 y, double H) {
  auto at = [&](int i, int j) { return g(Point2{y.x1 + i * H, y.x2 + j * H}); };
  const double c = at(0, 0);
  const double e = at(1, 0), w = at(-1, 0), n = at(0, 1), s = at(0, -1);
  const double ne = at(1, 1), nw = at(-1, 1), se = at(1, -1), sw = at(-1, -1);
  const double ee = at(2, 0), ww = at(-2, 0), nn = at(0, 2), ss = at(0, -2);
  const double H2 = H * H, H4 = H2 * H2;
  Derivs d;
  d.xx = (e - 2 * c + w) / H2;
  d.yy = (n - 2 * c + s) / H2;
  d.xy = (ne - nw - se + sw) / (4 * H2);
  d.bih = (20 * c - 8 * (e + w + n + s) + 2 * (ne + nw + se + sw) + ee + ww + nn + ss) / H4;
  return d;
}

template <class G>
Derivs derivatives(const G& g, Point2 y, double H, bool richardson) {
  const Derivs a = differences(g, y, H);
  if (!richardson) return a;
  const Derivs b = differences(g, y, 2 * H);
  auto rich = [](double fine, double coarse) { return (4 * fine - coarse) / 3; };
  return {rich(a.xx, b.xx), rich(a.yy, b.yy), rich(a.xy, b.xy), rich(a.bih, b.bih)};
}

double bracket_of(const Derivs& a, const Derivs& b) { return a.xx * b.yy + a.yy * b.xx - 2 * a.xy * b.xy; }

}  // namespace

OrbitResult orbit_residual(const ExtendedField& w_tilde, const ExtendedField& phi,
                           const Generator& gen, const ShellSpec& spec, const MaterialParams& mat,
                           double t, const OrbitOptions& opt) {
  const Grid& g = w_tilde.grid();
  if (!(phi.grid() == g)) throw GridMismatch("orbit fields live on different grids");
  if (!(opt.spacing > 0.0)) throw std::invalid_argument("orbit stencil spacing must be positive");
  const Interpolator iw(w_tilde, opt.interp_order), ip(phi, opt.interp_order);
  const VonKarmanForm form = to_vonkarman(spec, mat);
  const double inv_eh = 1.0 / (mat.E * mat.h);
  const Domain2D& d = g.domain;
  const double H = opt.spacing * std::max(g.h1, g.h2);
  const int reach = opt.richardson ? 4 : 2;  // stencil half-width in units of H

  auto forward = [&](Point2 x) { return homothetic_flow(gen, t, x); };
  auto backward = [&](Point2 x) { return homothetic_flow(gen, -t, x); };
  auto affine_w = [&](Point2 x) { return t * (gen.A1 * x.x1 + gen.A2 * x.x2 + gen.A3); };
  auto affine_phi = [&](Point2 x) { return t * (gen.B1 * x.x1 + gen.B2 * x.x2 + gen.B3); };
  auto tw = [&](Point2 x) { return iw(backward(x)) + affine_w(x); };
  auto tp = [&](Point2 x) { return ip(backward(x)) + affine_phi(x); };

  // Bounding box of the image of the domain.
  double lo1 = std::numeric_limits<double>::infinity(), hi1 = -lo1, lo2 = lo1, hi2 = -lo1;
  for (Point2 c : {Point2{d.a1, d.a2}, Point2{d.b1, d.a2}, Point2{d.a1, d.b2}, Point2{d.b1, d.b2}}) {
    const Point2 y = forward(c);
    lo1 = std::min(lo1, y.x1);
    hi1 = std::max(hi1, y.x1);
    lo2 = std::min(lo2, y.x2);
    hi2 = std::max(hi2, y.x2);
  }

  // Stencils fit in a square of half-width reach*H; the domain is convex and
  // the flow maps squares to squares, so checking the corners suffices.
  auto stencil_inside = [&](Point2 y, bool mapped) {
    for (int i : {-reach, reach})
      for (int j : {-reach, reach}) {
        const Point2 q{y.x1 + i * H, y.x2 + j * H};
        if (!d.contains(mapped ? backward(q) : q)) return false;
      }
    return true;
  };

  OrbitResult out;
  const int m1 = static_cast<int>(std::floor((hi1 - lo1) / H)), m2 = static_cast<int>(std::floor((hi2 - lo2) / H));
  const double off1 = lo1 + 0.5 * ((hi1 - lo1) - m1 * H), off2 = lo2 + 0.5 * ((hi2 - lo2) - m2 * H);
  for (int j = 0; j <= m2; ++j)
    for (int i = 0; i <= m1; ++i) {
      const Point2 xp{off1 + i * H, off2 + j * H};
      if (!stencil_inside(xp, true)) continue;
      const Point2 y = backward(xp);
      if (!stencil_inside(y, false)) continue;

      const Derivs dw = derivatives(tw, xp, H, opt.richardson);
      const Derivs dp = derivatives(tp, xp, H, opt.richardson);
      const double r1 = mat.D * dw.bih - bracket_of(dw, dp) - eval(form.P, xp);
      const double r2 = inv_eh * dp.bih + 0.5 * bracket_of(dw, dw) - eval(form.K, xp);
      out.transformed_residual = std::max({out.transformed_residual, std::abs(r1), std::abs(r2)});

      const Derivs bw = derivatives(iw, y, H, opt.richardson);
      const Derivs bp = derivatives(ip, y, H, opt.richardson);
      const double s1 = mat.D * bw.bih - bracket_of(bw, bp) - eval(form.P, y);
      const double s2 = inv_eh * bp.bih + 0.5 * bracket_of(bw, bw) - eval(form.K, y);
      out.baseline_residual = std::max({out.baseline_residual, std::abs(s1), std::abs(s2)});
      ++out.points;
    }
  if (out.points == 0) throw std::invalid_argument("transformed stencil exits the domain at every lattice point");

  const double tiny = std::numeric_limits<double>::min();
  if (out.baseline_residual <= tiny)
    out.ratio = out.transformed_residual <= tiny ? 1.0 : std::numeric_limits<double>::infinity();
  else
    out.ratio = out.transformed_residual / out.baseline_residual;
  return out;
}

ReductionResult verify_reduction_detailed(const ShellSpec& spec, const MaterialParams& mat,
                                          int n_random, std::uint64_t seed) {
  if (n_random < 1) throw std::invalid_argument("n_random must be positive");
  SamplingConfig sc;
  sc.seed = seed;
  const ClassificationResult cls = classify(spec, mat, sc);
  const Expr P = reduced_load(spec, mat);
  const Expr K = gauss_curvature(spec);
  Rng rng(seed);
  const auto& d = spec.domain;
  const double m1 = 0.05 * d.width1(), m2 = 0.05 * d.width2();
  constexpr int points_per_generator = 8;

  ReductionResult out;
  auto run = [&](const Generator& gen) {
    const DeterminingSystem sys(gen, spec, mat);
    for (int k = 0; k < points_per_generator; ++k) {
      const Point2 x{rng.uniform(d.a1 + m1, d.b1 - m1), rng.uniform(d.a2 + m2, d.b2 - m2)};
      const FullDeResiduals full = sys.residuals(x);
      const InvarianceResiduals red = invariance_residuals(gen, P, K, x);
      out.max_curvature_residual = std::max(
          {out.max_curvature_residual, std::abs(full.r11), std::abs(full.r12), std::abs(full.r22)});
      const double reduced = std::max(std::abs(red.rP), std::abs(red.rK));
      const double full_max = std::max(std::abs(full.r_12eq), std::abs(full.r_13eq));
      if (reduced <= 1e-10) {
        ++out.admitted_cases;
        out.max_full_residual = std::max(out.max_full_residual, full_max);
      } else {
        ++out.rejected_cases;
        if (reduced > 1e-6 && full_max <= 1e-10) ++out.inconsistent_cases;
      }
    }
  };

  for (int k = 0; k < n_random; ++k) {
    // admitted: a random element of the classified algebra
    Generator a;
    for (const auto& b : cls.basis) {
      const double c = rng.uniform(-1.0, 1.0);
      a.C1 += c * b.C[0];
      a.C2 += c * b.C[1];
      a.C3 += c * b.C[2];
      a.C4 += c * b.C[3];
    }
    a.A1 = rng.uniform(-1, 1), a.A2 = rng.uniform(-1, 1), a.A3 = rng.uniform(-1, 1);
    a.B1 = rng.uniform(-1, 1), a.B2 = rng.uniform(-1, 1), a.B3 = rng.uniform(-1, 1);
    run(a);
    // arbitrary homothetic part, usually not admitted
    Generator r = a;
    r.C1 = rng.uniform(-1, 1), r.C2 = rng.uniform(-1, 1), r.C3 = rng.uniform(-1, 1), r.C4 = rng.uniform(-1, 1);
    run(r);
  }
  return out;
}

double verify_reduction(const ShellSpec& spec, const MaterialParams& mat, int n_random,
                        std::uint64_t seed) {
  const ReductionResult r = verify_reduction_detailed(spec, mat, n_random, seed);
  return std::max(r.max_full_residual, r.max_curvature_residual);
}

ManufacturedCase ManufacturedCase::standard(const MaterialParams& mat) {
  mat.validate();
  ManufacturedCase mc;
  mc.w_exact = parse("sin(3.141592653589793*x1)*sin(3.141592653589793*x2)");
  mc.phi_exact = parse("x1^2*x2^2");
  const double inv_eh = 1.0 / (mat.E * mat.h);
  mc.form.P = mat.D * biharmonic(mc.w_exact) - bracket(mc.w_exact, mc.phi_exact);
  mc.form.K = inv_eh * biharmonic(mc.phi_exact) + 0.5 * bracket(mc.w_exact, mc.w_exact);
  mc.domain = {0.0, 1.0, 0.0, 1.0};
  mc.bc = {exact_bc(BcKind::clamped, mc.w_exact), exact_bc(BcKind::clamped, mc.phi_exact)};
  return mc;
}

std::vector<ConvergenceRow> manufactured_convergence(const ManufacturedCase& mc, const MaterialParams& mat,
                                                     const std::vector<int>& grid_points,
                                                     const SolveOptions& options) {
  std::vector<ConvergenceRow> rows;
  for (int n : grid_points) {
    const Grid g = Grid::with_points(mc.domain, n);
    const Problem pr = make_vonkarman(mc.form, mat, g, mc.bc);
    const SolveResult r = newton_solve(pr, options);
    const FieldGrid we = FieldGrid::sample(g, mc.w_exact), pe = FieldGrid::sample(g, mc.phi_exact);
    ConvergenceRow row;
    row.points = n;
    row.h = std::max(g.h1, g.h2);
    for (std::size_t k = 0; k < g.size(); ++k) {
      row.error_w = std::max(row.error_w, std::abs(r.w.values()[k] - we.values()[k]));
      row.error_phi = std::max(row.error_phi, std::abs(r.phi.values()[k] - pe.values()[k]));
    }
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      const double hr = std::log(prev.h / row.h);
      row.order_w = std::log(prev.error_w / row.error_w) / hr;
      row.order_phi = std::log(prev.error_phi / row.error_phi) / hr;
    }
    row.converged = r.report.converged;
    row.iterations = r.report.iterations;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shellsym
