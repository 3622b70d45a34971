#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shellsym/geometry.hpp"

namespace shellsym {

/// Candidate point-symmetry generator
///   X = xi^m d/dx^m + eta d/dw + phi d/dPhi
/// with xi a homothetic motion of the plane,
///   xi1 =  C1 x1 + C2 x2 + C3,   xi2 = -C2 x1 + C1 x2 + C4,
/// eta = -xi^m f,m + A1 x1 + A2 x2 + A3 and phi = B1 x1 + B2 x2 + B3.
struct Generator {
  double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double B1 = 0.0, B2 = 0.0, B3 = 0.0;

  static Generator homothetic(const std::array<double, 4>& c) {
    return Generator{c[0], c[1], c[2], c[3]};
  }
  std::array<double, 4> homothetic_part() const { return {C1, C2, C3, C4}; }

  double xi1(Point2 x) const { return C1 * x.x1 + C2 * x.x2 + C3; }
  double xi2(Point2 x) const { return -C2 * x.x1 + C1 * x.x2 + C4; }
  /// xi^m,m, identically 2 C1.
  double divergence() const { return 2.0 * C1; }
  /// d xi^m / d x^b for m, b in {1,2}.
  double xi_gradient(int m, int b) const;

  Expr xi1_expr() const;
  Expr xi2_expr() const;
  Expr eta_expr(const Expr& f) const;
  Expr phi_expr() const;
};

struct GeneratorComponents {
  double xi1, xi2, eta, phi;
};

GeneratorComponents xi_eta_phi(const Generator& gen, const ShellSpec& spec, Point2 x);

struct InvarianceResiduals {
  double rP = 0.0;
  double rK = 0.0;
};

/// rP = 2 P xi^m,m + xi^m P,m and likewise for K.
InvarianceResiduals invariance_residuals(const Generator& gen, const Expr& P, const Expr& K,
                                         Point2 x);

using ClassificationMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4>;

/// Coefficient matrix of the invariance conditions in (C1, C2, C3, C4).
/// Row 2k holds the P-condition at points[k], row 2k+1 the K-condition.
ClassificationMatrix assemble_classification_matrix(const Expr& P, const Expr& K,
                                                    std::span<const Point2> points);

struct SamplingConfig {
  int n_samples = 64;
  double svd_tol = 1e-8;
  double svd_floor = 1e-12;
  int verify_grid = 101;
  int verify_random = 500;
  double verify_tol = 1e-6;  // relative dense-grid residual for a genuine generator
  double margin = 0.05;      // fraction of the domain width kept clear of the boundary
  std::uint64_t seed = 42;
};

enum class Characterization { invariant, eigenfunction };

struct AdmittedGenerator {
  std::array<double, 4> C{};
  Characterization kind = Characterization::invariant;
  double eigenvalue = 0.0;  // -4 C1 for eigenfunctions
  double verification_residual = 0.0;
  std::string description;  // "rotation", "translation", "dilation" or "combined"
};

struct ClassificationResult {
  int nullity = 0;
  std::vector<AdmittedGenerator> basis;
  std::array<double, 4> singular_values{};
  int algebra_dimension = 6;
  /// Nullspace directions rejected by dense verification.
  std::vector<AdmittedGenerator> spurious;
  double threshold = 0.0;
};

/// Interior sample points: a Halton sequence shifted by a seeded random offset
/// (Cranley-Patterson rotation), mapped into the domain minus a margin.
std::vector<Point2> halton_points(const Domain2D& d, int n, double margin, std::uint64_t seed);

ClassificationResult classify(const ShellSpec& spec, const MaterialParams& mat,
                              const SamplingConfig& config = {});

std::string describe(const std::array<double, 4>& c, double tol);

struct FullDeResiduals {
  double r11 = 0.0, r12 = 0.0, r22 = 0.0;  // curvature conditions, three components
  double r_12eq = 0.0;                     // e e b eta condition
  double r_13eq = 0.0;                     // load condition
};

/// Full determining equations for one generator, with eta built symbolically
/// from the generator so all derivatives are exact.
class DeterminingSystem {
 public:
  DeterminingSystem(const Generator& gen, const ShellSpec& spec, const MaterialParams& mat);
  FullDeResiduals residuals(Point2 x) const;

 private:
  Generator gen_;
  double D_;
  CurvatureTensor b_;
  std::array<Expr, 6> db_;  // b11,1 b11,2 b12,1 b12,2 b22,1 b22,2
  Expr eta11_, eta12_, eta22_, eta_biharmonic_;
  Expr p_, p1_, p2_;
};

FullDeResiduals check_full_de(const Generator& gen, const ShellSpec& spec,
                              const MaterialParams& mat, Point2 x);

}  // namespace shellsym
