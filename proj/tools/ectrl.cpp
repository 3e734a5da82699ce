#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ectrl/analysis.hpp"
#include "ectrl/assembly.hpp"
#include "ectrl/control_vi.hpp"
#include "ectrl/io.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/recovery.hpp"
#include "ectrl/selfcheck.hpp"
#include "ectrl/state_vi.hpp"
#include "ectrl/targets.hpp"
#include "ectrl/unconstrained.hpp"
#include "ectrl/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

struct Args {
  std::string target = "u1";
  double k = 40.0;
  std::string constraints = "none";
  int n = 64;
  std::vector<int> levels;
  int n_coarse = 0; // 0: not requested (solve) / n/4 (reconstruct)
  std::string rho = "h2";
  double c = 1.0;
  double tol = 1e-5;
  int max_iter = 100;
  std::string out = ".";
  std::string format = "both";
  unsigned seed = 42;
  bool recover_in_study = false;
};

double resolve_rho(const std::string& spec, double h) {
  if (spec == "h2") {
    return h * h;
  }
  try {
    std::size_t pos = 0;
    const double value = std::stod(spec, &pos);
    if (pos != spec.size() || !(value > 0.0)) {
      throw std::invalid_argument("");
    }
    return value;
  } catch (...) {
    throw std::invalid_argument("--rho expects 'h2' or a positive real, got '" + spec + "'");
  }
}

bool wants_csv(const std::string& format) { return format == "csv" || format == "both"; }
bool wants_vtk(const std::string& format) { return format == "vtk" || format == "both"; }

std::filesystem::path out_path(const Args& args, const std::string& name) {
  std::filesystem::create_directories(args.out);
  return std::filesystem::path(args.out) / name;
}

json report_to_json(const ectrl::SolveReport& report) {
  return json{{"converged", report.converged},
              {"iterations", report.iterations},
              {"active_minus_sizes", report.active_minus_sizes},
              {"active_plus_sizes", report.active_plus_sizes},
              {"feasibility_violation", report.feasibility_violation},
              {"complementarity_residual", report.complementarity_residual},
              {"tol", report.tol},
              {"c", report.c},
              {"inner_rel_tol", report.inner_rel_tol}};
}

void write_manifest(const Args& args, const std::string& run_id, json extra) {
  json manifest{{"library", "ectrl"},
                {"version", ectrl::kVersion},
                {"run_id", run_id},
                {"parameters",
                 {{"target", args.target},
                  {"k", args.k},
                  {"constraints", args.constraints},
                  {"n", args.n},
                  {"levels", args.levels},
                  {"n_coarse", args.n_coarse},
                  {"rho", args.rho},
                  {"c", args.c},
                  {"tol", args.tol},
                  {"max_iter", args.max_iter},
                  {"format", args.format},
                  {"seed", args.seed}}}};
  manifest.update(extra);
  std::ofstream os(out_path(args, run_id + "_manifest.json"), std::ios::binary);
  os << manifest.dump(2) << '\n';
}

int run_single(const Args& args, bool reconstruct_cmd) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto target = ectrl::target_from_string(args.target, args.k);
  const auto constraint = ectrl::preset_constraints(args.constraints, args.k);
  const auto mesh = ectrl::build_structured_mesh(args.n);
  const double rho = resolve_rho(args.rho, mesh.h);
  const int subdiv = ectrl::default_subdivisions(target.kind);
  const ectrl::ScalarField target_field = [target](double x, double y) {
    return target(x, y);
  };

  int n_coarse = args.n_coarse;
  if (reconstruct_cmd && n_coarse == 0) {
    n_coarse = args.n / 4;
  }
  if (n_coarse > 0 && args.n != 4 * n_coarse) {
    throw std::invalid_argument("control recovery requires n = 4 * n_coarse");
  }

  std::string run_id = (reconstruct_cmd ? "reconstruct_" : "solve_") + args.target + "_" +
                       args.constraints + "_n" + std::to_string(args.n);
  if (n_coarse > 0) {
    run_id += "_H" + std::to_string(n_coarse);
  }

  ectrl::NodalVector u;
  json solve_json;
  bool converged = true;
  std::vector<std::string> outputs;

  auto vtk_point = [&](const std::string& field, const ectrl::NodalVector& values) {
    if (!wants_vtk(args.format)) {
      return;
    }
    const auto path = out_path(args, run_id + "_" + field + ".vtk");
    ectrl::write_vtk_point_scalar_file(path.string(), mesh, values, field, run_id);
    outputs.push_back(path.filename().string());
  };

  switch (constraint.mode) {
    case ectrl::ConstraintMode::none: {
      u = ectrl::solve_unconstrained(mesh, rho, target_field,
                                     ectrl::QuadratureRule::degree5().refined(subdiv));
      solve_json["mode"] = "unconstrained";
      break;
    }
    case ectrl::ConstraintMode::state: {
      ectrl::StateVIOptions options;
      options.c = args.c;
      options.tol = args.tol;
      options.max_iter = args.max_iter;
      options.load_subdivisions = subdiv;
      const auto sol = ectrl::solve_state_constrained(mesh, rho, target_field,
                                                      constraint.lower, constraint.upper,
                                                      options);
      u = sol.u;
      converged = sol.report.converged;
      solve_json["mode"] = "state";
      solve_json["report"] = report_to_json(sol.report);
      vtk_point("lambda", ectrl::extend_by_zero(sol.lambda, mesh));
      break;
    }
    case ectrl::ConstraintMode::control: {
      ectrl::ControlVIOptions options;
      options.c = args.c;
      options.tol = args.tol;
      options.max_iter = args.max_iter;
      options.load_subdivisions = subdiv;
      const auto sol = ectrl::solve_control_constrained(mesh, rho, target_field,
                                                        constraint.lower, constraint.upper,
                                                        options);
      u = sol.u;
      converged = sol.report.converged;
      solve_json["mode"] = "control";
      solve_json["report"] = report_to_json(sol.report);
      vtk_point("w", ectrl::extend_by_zero(sol.w, mesh));
      break;
    }
  }
  vtk_point("state", u);

  if (n_coarse > 0) {
    const auto coarse = ectrl::build_structured_mesh(n_coarse);
    const auto rec = ectrl::reconstruct_control(u, mesh, coarse);
    solve_json["recovery"] = {{"outer_iterations", rec.outer_iterations},
                              {"relative_residual", rec.relative_residual},
                              {"n_coarse", n_coarse}};
    if (wants_vtk(args.format)) {
      const auto path = out_path(args, run_id + "_control.vtk");
      ectrl::write_vtk_cell_scalar_file(path.string(), coarse, rec.z, "control", run_id);
      outputs.push_back(path.filename().string());
    }
  }

  if (wants_csv(args.format)) {
    ectrl::ConvergenceTable table;
    table.target_name = args.target;
    table.constraint_name = args.constraints;
    ectrl::StudyRow row;
    row.level = 0;
    row.n = args.n;
    row.h = mesh.h;
    row.rho = rho;
    row.dofs = static_cast<int>(ectrl::interior_indices(mesh).size());
    row.err_l2 = ectrl::l2_error(u, mesh, target_field, ectrl::QuadratureRule::degree5(),
                                 subdiv);
    row.err_h1 = ectrl::has_analytic_control(target.kind)
                     ? ectrl::h1_seminorm_error(u, mesh,
                                                ectrl::target_gradient(target.kind, target.k),
                                                ectrl::QuadratureRule::degree5(), subdiv)
                     : std::numeric_limits<double>::quiet_NaN();
    row.eoc_l2 = std::numeric_limits<double>::quiet_NaN();
    row.eoc_h1 = std::numeric_limits<double>::quiet_NaN();
    row.newton_iters = solve_json.contains("report") ? int(solve_json["report"]["iterations"])
                                                     : 0;
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    table.rows.push_back(row);
    const auto path = out_path(args, run_id + ".csv");
    ectrl::write_csv_file(path.string(), table);
    outputs.push_back(path.filename().string());
  }

  solve_json["outputs"] = outputs;
  solve_json["wall_ms"] = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
  write_manifest(args, run_id, json{{"solve", solve_json}});

  if (!converged) {
    std::cerr << "ectrl: solver did not converge within max_iter\n";
    return kExitSolver;
  }
  std::cout << "wrote " << outputs.size() << " file(s) to " << args.out << " (run id "
            << run_id << ")\n";
  return kExitOk;
}

int run_study(const Args& args) {
  if (args.levels.size() < 2) {
    throw std::invalid_argument("study requires --levels with at least two values");
  }
  const auto target = ectrl::target_from_string(args.target, args.k);
  const auto constraint = ectrl::preset_constraints(args.constraints, args.k);

  ectrl::StudyOptions options;
  options.c = args.c;
  options.tol = args.tol;
  options.max_iter = args.max_iter;
  options.with_recovery = args.recover_in_study;
  if (args.rho != "h2") {
    options.rho_override = resolve_rho(args.rho, 1.0);
  }

  const auto table = ectrl::run_convergence_study(target, constraint, args.levels, options);

  std::string run_id = "study_" + args.target + "_" + args.constraints + "_L" +
                       std::to_string(args.levels.front()) + "-" +
                       std::to_string(args.levels.back());

  std::vector<std::string> outputs;
  if (wants_csv(args.format)) {
    const auto path = out_path(args, run_id + ".csv");
    ectrl::write_csv_file(path.string(), table);
    outputs.push_back(path.filename().string());
  }
  ectrl::write_csv(std::cout, table);

  json rows = json::array();
  bool any_failed = false;
  for (const auto& row : table.rows) {
    any_failed = any_failed || row.failed;
    rows.push_back({{"n", row.n},
                    {"rho", row.rho},
                    {"err_l2", row.err_l2},
                    {"err_h1", row.err_h1},
                    {"err_control_dual", row.err_control_dual},
                    {"newton_iters", row.newton_iters},
                    {"failed", row.failed}});
  }
  write_manifest(args, run_id, json{{"study", {{"rows", rows}, {"outputs", outputs}}}});
  return any_failed ? kExitSolver : kExitOk;
}

int run_verify(const Args& args) {
  struct Check {
    std::string name;
    double value;
    double threshold;
  };
  const std::vector<Check> checks = {
      {"quadrature degree-5 exactness", ectrl::selfcheck::quadrature_monomial_error(), 1e-13},
      {"state active-set vs enumeration oracle",
       ectrl::selfcheck::state_oracle_deviation(4, 3, args.seed), 1e-8},
      {"control active-set vs enumeration oracle",
       ectrl::selfcheck::control_oracle_deviation(4, 2, args.seed), 1e-8},
      {"semi-smooth Newton step vs active-set update",
       ectrl::selfcheck::newton_equivalence_deviation(2, args.seed), 1e-10},
      {"control recovery vs dense Schur oracle",
       ectrl::selfcheck::recovery_dense_deviation(), 1e-10},
  };
  bool ok = true;
  for (const auto& check : checks) {
    const bool pass = check.value <= check.threshold;
    ok = ok && pass;
    std::cout << (pass ? "[ ok ] " : "[fail] ") << check.name << ": "
              << ectrl::format_double(check.value) << " (threshold "
              << ectrl::format_double(check.threshold) << ")\n";
  }
  return ok ? kExitOk : kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
  Args args;
  CLI::App app{"Elliptic distributed optimal control with energy regularization: "
               "active-set solves, control recovery and convergence studies"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--target", args.target, "target function: u1, u2, u3");
    cmd->add_option("--k", args.k, "sigmoid steepness for u2");
    cmd->add_option("--constraints", args.constraints,
                    "constraint preset: none, g1, g2, f1..f5");
    cmd->add_option("--rho", args.rho, "regularization: 'h2' or a positive real");
    cmd->add_option("--c", args.c, "complementarity scaling c > 0");
    cmd->add_option("--tol", args.tol, "active-set stopping tolerance");
    cmd->add_option("--max-iter", args.max_iter, "active-set iteration cap");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--format", args.format, "csv, vtk or both")
        ->check(CLI::IsMember({"csv", "vtk", "both"}));
  };

  auto* solve = app.add_subcommand("solve", "single solve with field export");
  add_common(solve);
  solve->add_option("--n", args.n, "mesh subdivisions per side")->check(CLI::PositiveNumber);
  solve->add_option("--n-coarse", args.n_coarse,
                    "coarse subdivisions for control recovery (n/4)");

  auto* study = app.add_subcommand("study", "convergence table over mesh levels");
  add_common(study);
  study->add_option("--levels", args.levels, "ascending mesh levels, e.g. 8,16,32")
      ->delimiter(',');
  study->add_flag("--recover", args.recover_in_study,
                  "also reconstruct the control per level (h = H/4)");

  auto* reconstruct =
      app.add_subcommand("reconstruct", "state solve plus control recovery");
  add_common(reconstruct);
  reconstruct->add_option("--n", args.n, "fine mesh subdivisions")->check(CLI::PositiveNumber);
  reconstruct->add_option("--n-coarse", args.n_coarse, "coarse subdivisions (default n/4)");

  auto* verify = app.add_subcommand("verify", "run the oracle self-checks on tiny meshes");
  verify->add_option("--seed", args.seed, "seed for the randomized oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e); // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return run_single(args, false);
    }
    if (study->parsed()) {
      return run_study(args);
    }
    if (reconstruct->parsed()) {
      return run_single(args, true);
    }
    if (verify->parsed()) {
      return run_verify(args);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "ectrl: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ectrl::SolverError& e) {
    std::cerr << "ectrl: solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "ectrl: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
