#include "shellsym/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "shellsym/equivalence.hpp"

namespace shellsym::cli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

ordered_json header(const char* command, const CaseConfig& c) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["case_id"] = c.case_id;
  j["seed"] = c.seed;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_report(const fs::path& dir, const std::string& name, const ordered_json& j) {
  write_text(dir / name, j.dump(2) + "\n");
}

void write_field(const fs::path& path, const ExtendedField& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, u);
}

ordered_json to_json(const std::array<double, 4>& c) { return ordered_json::array({c[0], c[1], c[2], c[3]}); }

ordered_json to_json(const AdmittedGenerator& a) {
  ordered_json j;
  j["C"] = to_json(a.C);
  j["description"] = a.description;
  j["characterization"] = a.kind == Characterization::invariant ? "invariant" : "eigenfunction";
  j["eigenvalue"] = a.eigenvalue;
  j["verification_residual"] = a.verification_residual;
  return j;
}

ordered_json to_json(const FieldBc& bc) {
  ordered_json j;
  j["kind"] = to_string(bc.kind);
  j["value"] = to_string(bc.value);
  if (bc.kind == BcKind::clamped) {
    const char* names[] = {"left", "right", "bottom", "top"};
    ordered_json n;
    for (int e = 0; e < 4; ++e) n[names[e]] = to_string(bc.normal_derivative[e]);
    j["normal_derivative"] = n;
  } else {
    j["laplacian"] = to_string(bc.laplacian);
  }
  return j;
}

ordered_json to_json(const SolveReport& r) {
  ordered_json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residual_norm_history"] = r.residual_norm_history;
  j["final_residual_inf"] = r.final_residual_inf;
  j["residual_scale"] = r.residual_scale;
  j["load_steps_used"] = r.load_steps_used;
  return j;
}

ordered_json grid_json(const Grid& g) {
  ordered_json j;
  j["points"] = g.n1 + 2;
  j["h1"] = g.h1;
  j["h2"] = g.h2;
  return j;
}

// "2 translations, 1 rotation"
std::string extra_generators(const std::vector<AdmittedGenerator>& basis) {
  std::map<std::string, int> count;
  for (const auto& a : basis) ++count[a.description];
  std::string out;
  for (const char* kind : {"translation", "rotation", "dilation", "combined"}) {
    const auto it = count.find(kind);
    if (it == count.end()) continue;
    if (!out.empty()) out += ", ";
    out += fmt::format("{} {}{}", it->second, kind, it->second == 1 ? "" : "s");
  }
  return out;
}

std::string classification_summary(const ClassificationResult& r, double tol) {
  if (r.nullity == 0) return "dimension 6 (kernel only)";
  if (r.nullity == 4) return "dimension 10 = 6 (kernel) + 4 (homothetic)";
  bool c1 = false;
  for (const auto& a : r.basis) c1 = c1 || std::abs(a.C[0]) >= tol;
  return fmt::format("dimension {} = 6 (kernel) + {}; extra generators: {}; C1 {}", r.algebra_dimension,
                     r.nullity, extra_generators(r.basis), c1 ? "included" : "excluded");
}

}  // namespace

int cmd_classify(const CaseConfig& c, const fs::path& dir, std::ostream& log) {
  const ShellSpec spec = c.shell();
  const SamplingConfig sc = c.sampling();
  const ClassificationResult r = classify(spec, c.material, sc);
  const ShallownessReport shallow = shallowness_check(spec);
  const std::string summary = classification_summary(r, sc.svd_tol);

  ordered_json j = header("classify", c);
  j["surface"] = to_string(spec.f);
  j["load"] = to_string(spec.p);
  j["algebra_dimension"] = r.algebra_dimension;
  j["kernel_dimension"] = 6;
  j["kernel_note"] = "6-parameter kernel always present";
  j["summary"] = summary;
  j["nullity"] = r.nullity;
  j["singular_values"] = r.singular_values;
  j["threshold"] = r.threshold;
  j["basis"] = ordered_json::array();
  for (const auto& a : r.basis) j["basis"].push_back(to_json(a));
  j["spurious"] = ordered_json::array();
  for (const auto& a : r.spurious) j["spurious"].push_back(to_json(a));
  j["shallowness"] = {{"max_slope_product", shallow.max_slope_product},
                      {"epsilon_squared", spec.epsilon * spec.epsilon},
                      {"ok", shallow.ok}};
  write_report(dir, "classification.json", j);

  log << summary << "\n";
  for (const auto& a : r.basis)
    log << fmt::format("  C = ({:.6g}, {:.6g}, {:.6g}, {:.6g})  {}, {}\n", a.C[0], a.C[1], a.C[2], a.C[3],
                       a.description, a.kind == Characterization::invariant ? "P and K invariant"
                                                                              : fmt::format("eigenfunctions, eigenvalue {:.6g}", a.eigenvalue));
  if (!r.spurious.empty()) log << "  " << r.spurious.size() << " nullspace direction(s) rejected by dense verification\n";
  if (!shallow.ok)
    log << fmt::format("warning: surface is not shallow: max slope product {:.6g} exceeds epsilon^2 = {:.6g}\n",
                       shallow.max_slope_product, spec.epsilon * spec.epsilon);
  return exit_ok;
}

int cmd_transform(const CaseConfig& c, const fs::path& dir, std::ostream& log) {
  const ShellSpec spec = c.shell();
  const VonKarmanForm form = to_vonkarman(spec, c.material);
  const BoundaryConditions tbc = transform_boundary_data(c.boundary(), spec);
  const Grid g = c.grid();

  ordered_json j = header("transform", c);
  j["P"] = to_string(form.P);
  j["K"] = to_string(form.K);
  j["shift"] = to_string(form.shift);
  j["grid"] = grid_json(g);
  j["boundary"] = {{"w_tilde", to_json(tbc.w)}, {"phi", to_json(tbc.phi)}};
  write_report(dir, "transform.json", j);
  write_field(dir / "P.csv", ExtendedField::sample(g, form.P));
  write_field(dir / "K.csv", ExtendedField::sample(g, form.K));

  log << "P = " << to_string(form.P) << "\n";
  log << "K = " << to_string(form.K) << "\n";
  return exit_ok;
}

namespace {

int solve_manufactured(const CaseConfig& c, const fs::path& dir, std::ostream& log) {
  const ManufacturedCase mc = ManufacturedCase::standard(c.material);
  const auto rows = manufactured_convergence(mc, c.material, c.manufactured_grids, c.solver);
  ordered_json j = header("solve", c);
  j["system"] = "vonkarman";
  j["manufactured"] = {{"w_exact", to_string(mc.w_exact)}, {"phi_exact", to_string(mc.phi_exact)}};
  j["rows"] = ordered_json::array();
  bool ok = true;
  log << fmt::format("{:>6} {:>12} {:>12} {:>8} {:>12} {:>8}\n", "points", "h", "err_w", "order", "err_phi", "order");
  for (const auto& r : rows) {
    ok = ok && r.converged;
    j["rows"].push_back({{"points", r.points}, {"h", r.h}, {"error_w", r.error_w}, {"error_phi", r.error_phi},
                         {"order_w", r.order_w}, {"order_phi", r.order_phi}, {"converged", r.converged},
                         {"iterations", r.iterations}});
    log << fmt::format("{:>6} {:>12.4e} {:>12.4e} {:>8.3f} {:>12.4e} {:>8.3f}\n", r.points, r.h, r.error_w,
                       r.order_w, r.error_phi, r.order_phi);
  }
  j["converged"] = ok;
  write_report(dir, "convergence.json", j);
  return ok ? exit_ok : exit_not_converged;
}

}  // namespace

int cmd_solve(const CaseConfig& c, System system, bool manufactured, const fs::path& dir, std::ostream& log) {
  if (manufactured) return solve_manufactured(c, dir, log);
  const ShellSpec spec = c.shell();
  const Grid g = c.grid();
  const BoundaryConditions bc = c.boundary();
  const Problem pr = system == System::marguerre ? make_marguerre(spec, c.material, g, bc)
                                                 : make_vonkarman(spec, c.material, g, bc);
  const SolveResult r = newton_solve(pr, c.solver);

  const bool vk = system == System::vonkarman;
  write_field(dir / (vk ? "w_tilde.csv" : "w.csv"), extend(r.w, pr.w_bc));
  write_field(dir / "phi.csv", extend(r.phi, pr.phi_bc));
  ordered_json j = header("solve", c);
  j["system"] = to_string(system);
  j["data_mode"] = "matched";
  j["grid"] = grid_json(g);
  j["report"] = to_json(r.report);
  j["max_abs_w"] = r.w.max_abs();
  j["max_abs_phi"] = r.phi.max_abs();
  write_report(dir, "solve_report.json", j);

  log << fmt::format("{} solve on {}x{} grid: {} after {} iteration(s), residual {:.3e}, load steps {}\n",
                     to_string(system), g.n1 + 2, g.n2 + 2, r.report.converged ? "converged" : "NOT converged",
                     r.report.iterations, r.report.final_residual_inf, r.report.load_steps_used);
  return r.report.converged ? exit_ok : exit_not_converged;
}

int cmd_verify(const CaseConfig& c, const std::string& check, const fs::path& dir, std::ostream& log) {
  const bool all = check.empty();
  if (!all && check != "equivalence" && check != "reduction" && check != "orbit")
    throw ConfigError("unknown check '" + check + "' (expected equivalence, reduction or orbit)");
  const ShellSpec spec = c.shell();
  const Grid g = c.grid();
  const BoundaryConditions bc = c.boundary();

  VerificationReport rep;
  rep.case_id = c.case_id;
  ordered_json j = header("verify", c);
  j["check"] = all ? "all" : check;
  ordered_json details;
  int code = exit_ok;

  if (all || check == "equivalence") {
    EquivalenceOptions eo;
    eo.solve = c.solver;
    try {
      const EquivalenceResult e = verify_equivalence_detailed(spec, c.material, g, bc, eo);
      rep.max_equivalence_gap_w = e.report.max_equivalence_gap_w;
      rep.max_equivalence_gap_phi = e.report.max_equivalence_gap_phi;
      rep.pass["equivalence"] = e.report.pass.at("equivalence");
      details["equivalence"] = {{"grid", grid_json(g)},
                                {"gap_tol", eo.gap_tol},
                                {"marguerre", to_json(e.marguerre.report)},
                                {"vonkarman", to_json(e.vonkarman.report)}};
      log << fmt::format("equivalence: max|w+f-w~| = {:.3e}, max|Phi_M-Phi_vK| = {:.3e}: {}\n",
                         rep.max_equivalence_gap_w, rep.max_equivalence_gap_phi,
                         rep.pass["equivalence"] ? "pass" : "FAIL");
    } catch (const SolverError& e) {
      rep.pass["equivalence"] = false;
      details["equivalence"] = {{"error", e.what()}};
      log << "equivalence: " << e.what() << "\n";
      code = exit_not_converged;
    }
  }

  if (all || check == "reduction") {
    const ReductionResult r = verify_reduction_detailed(spec, c.material, c.reduction_random, c.seed);
    rep.reduction_residual_max = std::max(r.max_full_residual, r.max_curvature_residual);
    rep.pass["reduction"] = r.max_full_residual < 1e-8 && r.max_curvature_residual < 1e-9 && r.inconsistent_cases == 0;
    details["reduction"] = {{"n_random", c.reduction_random},
                            {"max_full_residual", r.max_full_residual},
                            {"max_curvature_residual", r.max_curvature_residual},
                            {"admitted_cases", r.admitted_cases},
                            {"rejected_cases", r.rejected_cases},
                            {"inconsistent_cases", r.inconsistent_cases}};
    log << fmt::format("reduction: max residual {:.3e} over {} admitted cases: {}\n", rep.reduction_residual_max,
                       r.admitted_cases, rep.pass["reduction"] ? "pass" : "FAIL");
  }

  if (all || check == "orbit") {
    std::vector<Generator> gens;
    if (c.orbit.generator) {
      gens.push_back(Generator::homothetic(*c.orbit.generator));
    } else {
      for (const auto& a : classify(spec, c.material, c.sampling()).basis) gens.push_back(Generator::homothetic(a.C));
      if (gens.empty()) gens.push_back(Generator{0, 0, 0, 0, 1, 1, 1, 1, 1, 1});  // kernel only
    }
    const Problem pr = make_vonkarman(spec, c.material, g, bc, DataMode::symbolic);
    const SolveResult s = newton_solve(pr, c.solver);
    if (!s.report.converged) {
      rep.pass["orbit"] = false;
      details["orbit"] = {{"error", "von Karman solve did not converge"}, {"solve", to_json(s.report)}};
      log << "orbit: von Karman solve did not converge\n";
      code = exit_not_converged;
    } else {
      const ExtendedField ew = extend(s.w, pr.w_bc), ep = extend(s.phi, pr.phi_bc);
      ordered_json runs = ordered_json::array();
      double worst = 0.0;
      for (const Generator& gen : gens) {
        OrbitResult o;
        try {
          o = orbit_residual(ew, ep, gen, spec, c.material, c.orbit.t, c.orbit.options);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("orbit: ") + e.what() + "; reduce orbit.t or orbit.spacing");
        }
        worst = std::max(worst, o.ratio);
        runs.push_back({{"C", to_json(gen.homothetic_part())},
                        {"ratio", o.ratio},
                        {"transformed_residual", o.transformed_residual},
                        {"baseline_residual", o.baseline_residual},
                        {"points", o.points}});
      }
      rep.orbit_residual_ratio = worst;
      rep.pass["orbit"] = worst <= c.orbit.options.pass_ratio;
      details["orbit"] = {{"t", c.orbit.t},
                          {"interp_order", c.orbit.options.interp_order},
                          {"spacing", c.orbit.options.spacing},
                          {"richardson", c.orbit.options.richardson},
                          {"pass_ratio", c.orbit.options.pass_ratio},
                          {"generators", runs}};
      log << fmt::format("orbit: residual ratio {:.3e} (limit {:g}): {}\n", worst, c.orbit.options.pass_ratio,
                         rep.pass["orbit"] ? "pass" : "FAIL");
    }
  }

  j["max_equivalence_gap_w"] = rep.max_equivalence_gap_w;
  j["max_equivalence_gap_phi"] = rep.max_equivalence_gap_phi;
  j["orbit_residual_ratio"] = rep.orbit_residual_ratio;
  j["reduction_residual_max"] = rep.reduction_residual_max;
  j["pass"] = rep.pass;
  j["all_pass"] = rep.all_pass();
  j["details"] = details;
  write_report(dir, "verify_report.json", j);
  if (code != exit_ok) return code;
  return rep.all_pass() ? exit_ok : exit_verification_failed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* seed_env) {
  CLI::App app{"Lie-symmetry classification and equivalence tools for shallow shells", "shellsym"};
  app.require_subcommand(1);
  std::string config_path, system_name = "marguerre", check, out_dir = ".";
  bool manufactured = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON case configuration");
    sub->add_option("--out", out_dir, "output directory");
  };
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify the admitted symmetry algebra");
  CLI::App* transform_cmd = app.add_subcommand("transform", "map the shell to the von Karman form");
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the static equations");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification checks");
  for (CLI::App* sub : {classify_cmd, transform_cmd, solve_cmd, verify_cmd}) add_common(sub);
  solve_cmd->add_option("--system", system_name, "marguerre or vonkarman");
  solve_cmd->add_flag("--manufactured", manufactured, "convergence study on the manufactured solution");
  verify_cmd->add_option("--check", check, "equivalence, reduction or orbit (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  }

  try {
    CaseConfig config = config_path.empty() ? parse_config("{}") : load_config(config_path);
    apply_seed_override(config, seed_env);
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "'");

    if (*classify_cmd) return cmd_classify(config, dir, out);
    if (*transform_cmd) return cmd_transform(config, dir, out);
    if (*solve_cmd) {
      System system;
      try {
        system = system_from_string(system_name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      return cmd_solve(config, system, manufactured, dir, out);
    }
    return cmd_verify(config, check, dir, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return exit_not_converged;
  } catch (const SingularMatrix& e) {
    err << "solver error: " << e.what() << "\n";
    return exit_not_converged;
  }
}

}  // namespace shellsym::cli
