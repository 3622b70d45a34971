#include "shellsym/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace shellsym {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

int read_int(const json& j, const char* key, const std::string& where, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be an integer");
  return j.at(key).get<int>();
}

BcKind read_kind(const json& j, const char* key, BcKind fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return bc_kind_from_string(get<std::string>(j, key, "bc"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ShellSpec CaseConfig::shell() const {
  ShellSpec s;
  try {
    s.f = parse(surface);
  } catch (const ParseError& e) {
    throw ConfigError("surface: " + std::string(e.what()));
  }
  try {
    s.p = parse(load);
  } catch (const ParseError& e) {
    throw ConfigError("load: " + std::string(e.what()));
  }
  s.domain = {domain[0], domain[1], domain[2], domain[3]};
  s.epsilon = epsilon;
  return s;
}

Grid CaseConfig::grid() const { return Grid::with_points(shell().domain, grid_points); }

BoundaryConditions CaseConfig::boundary() const { return BoundaryConditions::homogeneous(w_kind, phi_kind); }

SamplingConfig CaseConfig::sampling() const {
  SamplingConfig s;
  s.n_samples = n_samples;
  s.svd_tol = svd_tol;
  s.seed = seed;
  return s;
}

CaseConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(j, "config",
                 {"case_id", "surface", "load", "domain", "epsilon", "material", "grid", "bc", "solver",
                  "classification", "seed", "orbit", "reduction", "manufactured"});
  CaseConfig c;
  read(j, "case_id", "config", c.case_id);
  read(j, "surface", "config", c.surface);
  read(j, "load", "config", c.load);
  read(j, "domain", "config", c.domain);
  read(j, "epsilon", "config", c.epsilon);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("material")) {
    const json& m = j["material"];
    reject_unknown(m, "material", {"D", "E", "h"});
    read(m, "D", "material", c.material.D);
    read(m, "E", "material", c.material.E);
    read(m, "h", "material", c.material.h);
  }
  if (j.contains("grid")) {
    reject_unknown(j["grid"], "grid", {"n"});
    c.grid_points = read_int(j["grid"], "n", "grid", c.grid_points);
  }
  if (j.contains("bc")) {
    reject_unknown(j["bc"], "bc", {"w_kind", "phi_kind"});
    c.w_kind = read_kind(j["bc"], "w_kind", c.w_kind);
    c.phi_kind = read_kind(j["bc"], "phi_kind", c.phi_kind);
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s, "solver", {"tol_abs", "tol_rel", "max_iter", "max_load_steps"});
    read(s, "tol_abs", "solver", c.solver.tol_abs);
    read(s, "tol_rel", "solver", c.solver.tol_rel);
    c.solver.max_iter = read_int(s, "max_iter", "solver", c.solver.max_iter);
    c.solver.max_load_steps = read_int(s, "max_load_steps", "solver", c.solver.max_load_steps);
  }
  if (j.contains("classification")) {
    const json& s = j["classification"];
    reject_unknown(s, "classification", {"n_samples", "svd_tol"});
    c.n_samples = read_int(s, "n_samples", "classification", c.n_samples);
    read(s, "svd_tol", "classification", c.svd_tol);
  }
  if (j.contains("orbit")) {
    const json& s = j["orbit"];
    reject_unknown(s, "orbit", {"generator", "t", "interp_order", "spacing", "richardson"});
    if (s.contains("generator")) c.orbit.generator = get<std::array<double, 4>>(s, "generator", "orbit");
    read(s, "t", "orbit", c.orbit.t);
    c.orbit.options.interp_order = read_int(s, "interp_order", "orbit", c.orbit.options.interp_order);
    read(s, "spacing", "orbit", c.orbit.options.spacing);
    read(s, "richardson", "orbit", c.orbit.options.richardson);
  }
  if (j.contains("reduction")) {
    reject_unknown(j["reduction"], "reduction", {"n_random"});
    c.reduction_random = read_int(j["reduction"], "n_random", "reduction", c.reduction_random);
  }
  if (j.contains("manufactured")) {
    reject_unknown(j["manufactured"], "manufactured", {"grids"});
    read(j["manufactured"], "grids", "manufactured", c.manufactured_grids);
  }

  // Preconditions of the modules, checked up front so errors map to exit 2.
  try {
    const ShellSpec s = c.shell();
    s.validate();
    c.material.validate();
    if (c.grid_points < 11) throw ConfigError("grid.n must be at least 11 (9 interior points)");
    (void)c.grid();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(c.solver.tol_abs >= 0.0) || !(c.solver.tol_rel >= 0.0))
    throw ConfigError("solver tolerances must be non-negative");
  if (c.solver.max_iter < 1 || c.solver.max_load_steps < 1 || c.solver.max_load_steps > 16)
    throw ConfigError("solver.max_iter must be positive and solver.max_load_steps in 1..16");
  if (c.n_samples < 4) throw ConfigError("classification.n_samples must be at least 4");
  if (!(c.svd_tol > 0.0 && c.svd_tol < 1.0)) throw ConfigError("classification.svd_tol must lie in (0, 1)");
  if (c.orbit.options.interp_order < 2 || c.orbit.options.interp_order > 8)
    throw ConfigError("orbit.interp_order must be between 2 and 8");
  if (!(c.orbit.options.spacing > 0.0)) throw ConfigError("orbit.spacing must be positive");
  if (c.reduction_random < 1) throw ConfigError("reduction.n_random must be positive");
  if (c.manufactured_grids.size() < 2) throw ConfigError("manufactured.grids needs at least two grids");
  for (int n : c.manufactured_grids)
    if (n < 11) throw ConfigError("manufactured grids need at least 11 points per axis");
  return c;
}

CaseConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_seed_override(CaseConfig& config, const char* env_value) {
  if (env_value == nullptr) return;
  const std::string_view s(env_value);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("SHELLSYM_SEED must be a non-negative integer, got '" + std::string(s) + "'");
  config.seed = seed;
}

}  // namespace shellsym
