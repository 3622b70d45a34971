#include "shellsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shellsym/random.hpp"

namespace shellsym {

double Generator::xi_gradient(int m, int b) const {
  if (m == 1) return b == 1 ? C1 : C2;
  return b == 1 ? -C2 : C1;
}

Expr Generator::xi1_expr() const {
  return sum({C1 * x1(), C2 * x2(), Expr::constant(C3)});
}

Expr Generator::xi2_expr() const {
  return sum({-C2 * x1(), C1 * x2(), Expr::constant(C4)});
}

Expr Generator::eta_expr(const Expr& f) const {
  return sum({-(xi1_expr() * diff(f, 1)), -(xi2_expr() * diff(f, 2)), A1 * x1(), A2 * x2(),
              Expr::constant(A3)});
}

Expr Generator::phi_expr() const { return sum({B1 * x1(), B2 * x2(), Expr::constant(B3)}); }

GeneratorComponents xi_eta_phi(const Generator& gen, const ShellSpec& spec, Point2 x) {
  const double xi1 = gen.xi1(x);
  const double xi2 = gen.xi2(x);
  const double f1 = eval(diff(spec.f, 1), x);
  const double f2 = eval(diff(spec.f, 2), x);
  const double eta = -(xi1 * f1 + xi2 * f2) + gen.A1 * x.x1 + gen.A2 * x.x2 + gen.A3;
  const double phi = gen.B1 * x.x1 + gen.B2 * x.x2 + gen.B3;
  return {xi1, xi2, eta, phi};
}

InvarianceResiduals invariance_residuals(const Generator& gen, const Expr& P, const Expr& K,
                                         Point2 x) {
  const double xi1 = gen.xi1(x);
  const double xi2 = gen.xi2(x);
  const double div = gen.divergence();
  auto r = [&](const Expr& Q) {
    return 2.0 * eval(Q, x) * div + xi1 * eval(diff(Q, 1), x) + xi2 * eval(diff(Q, 2), x);
  };
  return {r(P), r(K)};
}

namespace {

struct ConditionExprs {
  Expr Q, Q1, Q2;

  explicit ConditionExprs(const Expr& q) : Q(q), Q1(diff(q, 1)), Q2(diff(q, 2)) {}

  // Coefficients of 2 Q xi^m,m + xi^m Q,m in (C1, C2, C3, C4).
  std::array<double, 4> row(Point2 x) const {
    const double q = eval(Q, x), q1 = eval(Q1, x), q2 = eval(Q2, x);
    return {4.0 * q + x.x1 * q1 + x.x2 * q2, x.x2 * q1 - x.x1 * q2, q1, q2};
  }
};

double radical_inverse(std::uint64_t k, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

ClassificationMatrix assemble_classification_matrix(const Expr& P, const Expr& K,
                                                    std::span<const Point2> points) {
  const ConditionExprs cp(P), ck(K);
  ClassificationMatrix m(2 * static_cast<Eigen::Index>(points.size()), 4);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto rp = cp.row(points[k]);
    const auto rk = ck.row(points[k]);
    for (int c = 0; c < 4; ++c) {
      m(2 * k, c) = rp[c];
      m(2 * k + 1, c) = rk[c];
    }
  }
  return m;
}

std::vector<Point2> halton_points(const Domain2D& d, int n, double margin, std::uint64_t seed) {
  Rng rng(seed);
  const double s1 = rng.uniform(), s2 = rng.uniform();
  const double lo1 = d.a1 + margin * d.width1(), w1 = (1.0 - 2.0 * margin) * d.width1();
  const double lo2 = d.a2 + margin * d.width2(), w2 = (1.0 - 2.0 * margin) * d.width2();
  std::vector<Point2> pts;
  pts.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const double u = std::fmod(radical_inverse(k, 2) + s1, 1.0);
    const double v = std::fmod(radical_inverse(k, 3) + s2, 1.0);
    pts.push_back({lo1 + w1 * u, lo2 + w2 * v});
  }
  return pts;
}

std::string describe(const std::array<double, 4>& c, double tol) {
  const bool dil = std::abs(c[0]) > tol;
  const bool rot = std::abs(c[1]) > tol;
  const bool tr = std::abs(c[2]) > tol || std::abs(c[3]) > tol;
  if (dil && !rot && !tr) return "dilation";
  if (rot && !dil && !tr) return "rotation";
  if (tr && !dil && !rot) return "translation";
  return "combined";
}

ClassificationResult classify(const ShellSpec& spec, const MaterialParams& mat,
                              const SamplingConfig& config) {
  spec.validate();
  mat.validate();
  if (config.n_samples < 4) throw std::invalid_argument("classification needs at least 4 sample points");
  if (!(config.margin >= 0.0 && config.margin < 0.5))
    throw std::invalid_argument("sampling margin must lie in [0, 0.5)");

  const Expr P = reduced_load(spec, mat);
  const Expr K = gauss_curvature(spec);
  const auto pts = halton_points(spec.domain, config.n_samples, config.margin, config.seed);
  const ClassificationMatrix m = assemble_classification_matrix(P, K, pts);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m), Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  ClassificationResult result;
  for (int i = 0; i < 4; ++i) result.singular_values[i] = sv(i);
  result.threshold = config.svd_tol * std::max(sv(0), config.svd_floor);

  std::vector<int> null_cols;
  for (int i = 0; i < 4; ++i)
    if (sv(i) < result.threshold) null_cols.push_back(i);

  // Canonical orthonormal basis: Gram-Schmidt on the projections of the unit
  // vectors e_1..e_4 onto the nullspace, independent of how the SVD rotated it.
  std::vector<Eigen::Vector4d> basis;
  if (!null_cols.empty()) {
    Eigen::Matrix<double, 4, Eigen::Dynamic> N(4, static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t k = 0; k < null_cols.size(); ++k) N.col(k) = svd.matrixV().col(null_cols[k]);
    const Eigen::Matrix4d proj = N * N.transpose();
    for (int e = 0; e < 4 && basis.size() < null_cols.size(); ++e) {
      Eigen::Vector4d v = proj.col(e);
      for (const auto& b : basis) v -= b.dot(v) * b;
      for (const auto& b : basis) v -= b.dot(v) * b;
      if (v.norm() > 1e-6) basis.push_back(v.normalized());
    }
  }

  // Dense verification on an independent point set.
  std::vector<Point2> vpts;
  const auto& d = spec.domain;
  const double lo1 = d.a1 + config.margin * d.width1(), w1 = (1.0 - 2.0 * config.margin) * d.width1();
  const double lo2 = d.a2 + config.margin * d.width2(), w2 = (1.0 - 2.0 * config.margin) * d.width2();
  const int g = std::max(config.verify_grid, 2);
  for (int j = 0; j < g; ++j)
    for (int i = 0; i < g; ++i) vpts.push_back({lo1 + w1 * i / (g - 1), lo2 + w2 * j / (g - 1)});
  Rng rng(config.seed ^ 0x5eedf00dULL);
  for (int k = 0; k < config.verify_random; ++k)
    vpts.push_back({rng.uniform(lo1, lo1 + w1), rng.uniform(lo2, lo2 + w2)});
  const ClassificationMatrix vm = assemble_classification_matrix(P, K, vpts);
  const double scale = vm.cwiseAbs().rowwise().sum().maxCoeff();

  for (Eigen::Vector4d v : basis) {
    int big = 0;
    v.cwiseAbs().maxCoeff(&big);
    if (v(big) < 0.0) v = -v;
    for (int i = 0; i < 4; ++i)
      if (std::abs(v(i)) < 1e-14) v(i) = 0.0;

    AdmittedGenerator a;
    a.C = {v(0), v(1), v(2), v(3)};
    a.verification_residual = scale > config.svd_floor ? (vm * v).cwiseAbs().maxCoeff() / scale : 0.0;
    if (std::abs(a.C[0]) < config.svd_tol) {
      a.kind = Characterization::invariant;
      a.eigenvalue = 0.0;
    } else {
      a.kind = Characterization::eigenfunction;
      a.eigenvalue = -4.0 * a.C[0];
    }
    a.description = describe(a.C, config.svd_tol);
    if (a.verification_residual > config.verify_tol)
      result.spurious.push_back(a);
    else
      result.basis.push_back(a);
  }
  result.nullity = static_cast<int>(result.basis.size());
  result.algebra_dimension = 6 + result.nullity;
  return result;
}

DeterminingSystem::DeterminingSystem(const Generator& gen, const ShellSpec& spec,
                                     const MaterialParams& mat)
    : gen_(gen), D_(mat.D), b_(curvature_tensor(spec)), p_(spec.p) {
  db_ = {diff(b_.b11, 1), diff(b_.b11, 2), diff(b_.b12, 1),
         diff(b_.b12, 2), diff(b_.b22, 1), diff(b_.b22, 2)};
  const Expr eta = gen.eta_expr(spec.f);
  const Expr eta1 = diff(eta, 1), eta2 = diff(eta, 2);
  eta11_ = diff(eta1, 1);
  eta12_ = diff(eta1, 2);
  eta22_ = diff(eta2, 2);
  eta_biharmonic_ = biharmonic(eta);
  p1_ = diff(p_, 1);
  p2_ = diff(p_, 2);
}

FullDeResiduals DeterminingSystem::residuals(Point2 x) const {
  const double xi[2] = {gen_.xi1(x), gen_.xi2(x)};
  double b[2][2];
  b[0][0] = eval(b_.b11, x);
  b[0][1] = b[1][0] = eval(b_.b12, x);
  b[1][1] = eval(b_.b22, x);
  double db[2][2][2];  // db[a][c][m] = b_ac,m
  db[0][0][0] = eval(db_[0], x);
  db[0][0][1] = eval(db_[1], x);
  db[0][1][0] = db[1][0][0] = eval(db_[2], x);
  db[0][1][1] = db[1][0][1] = eval(db_[3], x);
  db[1][1][0] = eval(db_[4], x);
  db[1][1][1] = eval(db_[5], x);
  double eta2[2][2];
  eta2[0][0] = eval(eta11_, x);
  eta2[0][1] = eta2[1][0] = eval(eta12_, x);
  eta2[1][1] = eval(eta22_, x);

  // b_am xi^m,b + b_bm xi^m,a + xi^m b_ab,m + eta,ab
  auto curvature_condition = [&](int a, int c) {
    double r = eta2[a][c];
    for (int m = 0; m < 2; ++m) {
      r += b[a][m] * gen_.xi_gradient(m + 1, c + 1) + b[c][m] * gen_.xi_gradient(m + 1, a + 1);
      r += xi[m] * db[a][c][m];
    }
    return r;
  };

  FullDeResiduals out;
  out.r11 = curvature_condition(0, 0);
  out.r12 = curvature_condition(0, 1);
  out.r22 = curvature_condition(1, 1);
  double ebe = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int m = 0; m < 2; ++m)
      for (int c = 0; c < 2; ++c)
        for (int n = 0; n < 2; ++n)
          ebe += alternating(a + 1, m + 1) * alternating(c + 1, n + 1) * b[a][c] * eta2[m][n];
  out.r_12eq = ebe;
  out.r_13eq = D_ * eval(eta_biharmonic_, x) - 2.0 * eval(p_, x) * gen_.divergence() -
               (xi[0] * eval(p1_, x) + xi[1] * eval(p2_, x));
  return out;
}

FullDeResiduals check_full_de(const Generator& gen, const ShellSpec& spec,
                              const MaterialParams& mat, Point2 x) {
  return DeterminingSystem(gen, spec, mat).residuals(x);
}

}  // namespace shellsym
