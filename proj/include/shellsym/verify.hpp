#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shellsym/solver.hpp"
#include "shellsym/symmetry.hpp"

namespace shellsym {

struct VerificationReport {
  std::string case_id;
  double max_equivalence_gap_w = 0.0;
  double max_equivalence_gap_phi = 0.0;
  double orbit_residual_ratio = 0.0;
  double reduction_residual_max = 0.0;
  /// One flag per check that was run ("equivalence", "orbit", "reduction").
  std::map<std::string, bool> pass;

  bool all_pass() const {
    for (const auto& [name, ok] : pass)
      if (!ok) return false;
    return true;
  }
};

struct EquivalenceOptions {
  SolveOptions solve;
  double gap_tol = 1e-9;
};

struct EquivalenceResult {
  VerificationReport report;
  SolveResult marguerre;
  SolveResult vonkarman;
};

/// Solves the Marguerre problem and its von Karman transform on the same grid
/// with matched-stencil data and compares w + f with w~ and the two Phi.
/// Throws SolverError if either solve fails to converge.
EquivalenceResult verify_equivalence_detailed(const ShellSpec& spec, const MaterialParams& mat,
                                              const Grid& grid, const BoundaryConditions& bc,
                                              const EquivalenceOptions& options = {});

VerificationReport verify_equivalence(const ShellSpec& spec, const MaterialParams& mat,
                                      const Grid& grid, const BoundaryConditions& bc,
                                      const EquivalenceOptions& options = {});

/// Point map exp(tY) of the homothetic part of a generator.
Point2 homothetic_flow(const Generator& gen, double t, Point2 x);

struct OrbitOptions {
  int interp_order = 6;
  double spacing = 2.0;     // residual stencil spacing in units of max(h1, h2)
  bool richardson = true;   // combine spacings H and 2H to fourth order
  double pass_ratio = 10.0;
};

struct OrbitResult {
  double ratio = 0.0;
  double transformed_residual = 0.0;
  double baseline_residual = 0.0;
  int points = 0;
};

/// Maps a von Karman solution (w~, Phi) by exp(tY) and evaluates the continuous
/// residual of the image on a lattice of points x' whose preimages lie in the
/// domain. The baseline is the residual of the untransformed fields at the
/// preimages, with the same stencils, so the ratio is 1 at t = 0 and stays
/// near 1 for a symmetry. Throws std::invalid_argument if no lattice point
/// keeps its stencil inside the domain.
OrbitResult orbit_residual(const ExtendedField& w_tilde, const ExtendedField& phi,
                           const Generator& gen, const ShellSpec& spec, const MaterialParams& mat,
                           double t, const OrbitOptions& options = {});

struct ReductionResult {
  double max_full_residual = 0.0;     // equations 12-13 where the reduced ones vanish
  double max_curvature_residual = 0.0;  // equation 11, all generators
  int admitted_cases = 0;             // (generator, point) pairs with vanishing reduced residuals
  int rejected_cases = 0;
  int inconsistent_cases = 0;  // reduced residual nonzero but full residual zero
};

/// Random generators (combinations of the admitted ones plus arbitrary kernel
/// parts, and arbitrary homothetic parts) evaluated at random points.
ReductionResult verify_reduction_detailed(const ShellSpec& spec, const MaterialParams& mat,
                                          int n_random, std::uint64_t seed = 42);

double verify_reduction(const ShellSpec& spec, const MaterialParams& mat, int n_random,
                        std::uint64_t seed = 42);

/// Von Karman problem with a known smooth solution: w~* = sin(pi x1) sin(pi x2),
/// Phi* = x1^2 x2^2 on the unit square, right-hand sides obtained by applying
/// the continuous operators, clamped data taken from the exact fields.
struct ManufacturedCase {
  Expr w_exact;
  Expr phi_exact;
  VonKarmanForm form;
  Domain2D domain;
  BoundaryConditions bc;

  static ManufacturedCase standard(const MaterialParams& mat);
};

struct ConvergenceRow {
  int points = 0;  // per axis, boundary included
  double h = 0.0;
  double error_w = 0.0;  // max over interior nodes
  double error_phi = 0.0;
  double order_w = 0.0;  // observed order against the previous row; 0 on the first
  double order_phi = 0.0;
  bool converged = false;
  int iterations = 0;
};

std::vector<ConvergenceRow> manufactured_convergence(const ManufacturedCase& mc, const MaterialParams& mat,
                                                     const std::vector<int>& grid_points,
                                                     const SolveOptions& options = {});

}  // namespace shellsym
