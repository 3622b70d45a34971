#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellsym/banded.hpp"
#include "shellsym/equivalence.hpp"
#include "shellsym/grid.hpp"

namespace shellsym {

enum class System { marguerre, vonkarman };

const char* to_string(System s);
System system_from_string(const std::string& name);

/// How right-hand sides and curvature samples are produced. `matched` applies
/// the solver's own stencils to the sampled midsurface (ghosts from the
/// deflection's boundary rule), which makes the Marguerre and von Karman
/// discretizations algebraically identical; `symbolic` samples the exact
/// expressions.
enum class DataMode { matched, symbolic };

/// A discretized static problem: either the Marguerre system
///   D Lap^2 w - [w,Phi] - [b,Phi] = p,   (1/Eh) Lap^2 Phi + (1/2)[w,w] + [b,w] = 0
/// or the nonhomogeneous von Karman system
///   D Lap^2 w - [w,Phi] = P,             (1/Eh) Lap^2 Phi + (1/2)[w,w] = K.
struct Problem {
  System system = System::vonkarman;
  MaterialParams mat;
  Grid grid;
  std::vector<double> load;  // p or P, scaled by the continuation factor
  std::vector<double> rhs2;  // 0 or K
  Hessians b;                // curvature samples (Marguerre only)
  DiscreteBc w_bc;
  DiscreteBc phi_bc;
};

Problem make_marguerre(const ShellSpec& spec, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc, DataMode mode = DataMode::matched);

/// von Karman problem obtained from a Marguerre specification; `bc` is the
/// Marguerre boundary data and is transformed internally.
Problem make_vonkarman(const ShellSpec& spec, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc, DataMode mode = DataMode::matched);

/// von Karman problem with explicit right-hand sides, sampled symbolically.
Problem make_vonkarman(const VonKarmanForm& form, const MaterialParams& mat, const Grid& grid,
                       const BoundaryConditions& bc);

struct Residual {
  FieldGrid r1, r2;
  double scale = 0.0;  // magnitude of the terms that make up the residual

  double norm_inf() const { return std::max(r1.max_abs(), r2.max_abs()); }
};

Residual residual(const Problem& problem, const FieldGrid& w, const FieldGrid& phi,
                  double load_factor = 1.0);

/// Jacobian of the residual with respect to the interior unknowns, ordered
/// (w, Phi) interleaved per node, nodes x1-fastest.
BandedMatrix jacobian(const Problem& problem, const FieldGrid& w, const FieldGrid& phi);

struct SolveOptions {
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  int max_iter = 30;
  int max_load_steps = 16;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;  // total over all load steps
  std::vector<double> residual_norm_history;  // final load step
  double final_residual_inf = 0.0;
  double residual_scale = 0.0;
  int load_steps_used = 1;
};

struct SolveResult {
  FieldGrid w;
  FieldGrid phi;
  SolveReport report;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration with load continuation as fallback. Non-convergence is
/// reported (converged = false, best iterate returned), not thrown; a singular
/// Jacobian raises SingularMatrix.
SolveResult newton_solve(const Problem& problem, const FieldGrid& w0, const FieldGrid& phi0,
                         const SolveOptions& options = {});

inline SolveResult newton_solve(const Problem& problem, const SolveOptions& options = {}) {
  return newton_solve(problem, FieldGrid(problem.grid), FieldGrid(problem.grid), options);
}

}  // namespace shellsym
