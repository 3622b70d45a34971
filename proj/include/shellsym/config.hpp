#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shellsym/solver.hpp"
#include "shellsym/symmetry.hpp"
#include "shellsym/verify.hpp"

namespace shellsym {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One case, read from a JSON document. Every key is optional; unknown keys
/// are rejected.
struct CaseConfig {
  std::string case_id = "case";
  std::string surface = "0";
  std::string load = "0";
  std::array<double, 4> domain{0.0, 1.0, 0.0, 1.0};  // a1, b1, a2, b2
  double epsilon = 0.2;
  MaterialParams material;
  int grid_points = 33;  // per axis, boundary included
  BcKind w_kind = BcKind::clamped;
  BcKind phi_kind = BcKind::clamped;
  SolveOptions solver;
  int n_samples = 64;
  double svd_tol = 1e-8;
  std::uint64_t seed = 42;

  struct Orbit {
    std::optional<std::array<double, 4>> generator;  // C1..C4; default: the admitted basis
    double t = 0.3;
    OrbitOptions options;
  } orbit;
  int reduction_random = 20;
  std::vector<int> manufactured_grids{33, 65, 129};

  ShellSpec shell() const;  // parses the expressions
  Grid grid() const;
  BoundaryConditions boundary() const;
  SamplingConfig sampling() const;
};

/// Throws ConfigError on malformed JSON, unknown keys, wrong types or values
/// outside the module preconditions.
CaseConfig parse_config(std::string_view json_text);
CaseConfig load_config(const std::string& path);

/// Applies SHELLSYM_SEED when set (non-null); throws ConfigError if malformed.
void apply_seed_override(CaseConfig& config, const char* env_value);

}  // namespace shellsym
