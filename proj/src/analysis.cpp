#include "ectrl/analysis.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ectrl/assembly.hpp"
#include "ectrl/control_vi.hpp"
#include "ectrl/recovery.hpp"
#include "ectrl/state_vi.hpp"
#include "ectrl/unconstrained.hpp"

namespace ectrl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

} // namespace

double l2_error(const NodalVector& u, const Mesh& mesh, const ScalarField& exact,
                const QuadratureRule& quad, int subdivisions) {
  const auto rule = quad.refined(subdivisions);
  double err2 = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.nodes[el[0]];
    const auto& p1 = mesh.nodes[el[1]];
    const auto& p2 = mesh.nodes[el[2]];
    const double area = element_area(mesh, e);
    for (int q = 0; q < rule.size(); ++q) {
      const auto& lam = rule.points[q];
      const double x = lam[0] * p0[0] + lam[1] * p1[0] + lam[2] * p2[0];
      const double y = lam[0] * p0[1] + lam[1] * p1[1] + lam[2] * p2[1];
      const double uh = lam[0] * u[el[0]] + lam[1] * u[el[1]] + lam[2] * u[el[2]];
      const double d = uh - exact(x, y);
      err2 += rule.weights[q] * area * d * d;
    }
  }
  return std::sqrt(err2);
}

double h1_seminorm_error(const NodalVector& u, const Mesh& mesh,
                         const GradientField& exact_gradient, const QuadratureRule& quad,
                         int subdivisions) {
  const auto rule = quad.refined(subdivisions);
  double err2 = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.nodes[el[0]];
    const auto& p1 = mesh.nodes[el[1]];
    const auto& p2 = mesh.nodes[el[2]];
    const double area = element_area(mesh, e);
    const double inv2a = 1.0 / (2.0 * area);
    const double gx = inv2a * (u[el[0]] * (p1[1] - p2[1]) + u[el[1]] * (p2[1] - p0[1]) +
                               u[el[2]] * (p0[1] - p1[1]));
    const double gy = inv2a * (u[el[0]] * (p2[0] - p1[0]) + u[el[1]] * (p0[0] - p2[0]) +
                               u[el[2]] * (p1[0] - p0[0]));
    for (int q = 0; q < rule.size(); ++q) {
      const auto& lam = rule.points[q];
      const double x = lam[0] * p0[0] + lam[1] * p1[0] + lam[2] * p2[0];
      const double y = lam[0] * p0[1] + lam[1] * p1[1] + lam[2] * p2[1];
      const auto g = exact_gradient(x, y);
      const double dx = gx - g[0];
      const double dy = gy - g[1];
      err2 += rule.weights[q] * area * (dx * dx + dy * dy);
    }
  }
  return std::sqrt(err2);
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size() || errors.size() < 2) {
    throw std::invalid_argument("eoc: need equally sized lists with at least 2 entries");
  }
  std::vector<double> out(errors.size(), kNan);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] > 0.0 && errors[i] > 0.0 && hs[i - 1] != hs[i]) {
      out[i] = std::log(errors[i - 1] / errors[i]) / std::log(hs[i - 1] / hs[i]);
    }
  }
  return out;
}

int default_subdivisions(TargetKind kind) { return kind == TargetKind::u1 ? 1 : 4; }

ConvergenceTable run_convergence_study(const TargetSpec& target,
                                       const ConstraintSpec& constraint,
                                       const std::vector<int>& levels,
                                       const StudyOptions& options) {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) {
      throw std::invalid_argument("run_convergence_study: levels must be ascending");
    }
  }

  ConvergenceTable table;
  table.target_name = target.name();
  table.constraint_name = constraint.name;

  const int subdiv =
      options.subdivisions > 0 ? options.subdivisions : default_subdivisions(target.kind);
  const auto quad = QuadratureRule::degree5();
  const ScalarField target_field = [target](double x, double y) { return target(x, y); };

  for (std::size_t li = 0; li < levels.size(); ++li) {
    StudyRow row;
    row.level = static_cast<int>(li);
    row.n = levels[li];
    row.err_control_dual = kNan;

    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Mesh mesh = build_structured_mesh(row.n);
      row.h = mesh.h;
      row.rho = options.rho_override > 0.0 ? options.rho_override : mesh.h * mesh.h;
      row.dofs = static_cast<int>(interior_indices(mesh).size());

      NodalVector u;
      switch (constraint.mode) {
        case ConstraintMode::none: {
          u = solve_unconstrained(mesh, row.rho, target_field, quad.refined(subdiv));
          row.newton_iters = 0;
          break;
        }
        case ConstraintMode::state: {
          StateVIOptions vi;
          vi.c = options.c;
          vi.tol = options.tol;
          vi.max_iter = options.max_iter;
          vi.load_subdivisions = subdiv;
          const auto sol = solve_state_constrained(mesh, row.rho, target_field,
                                                   constraint.lower, constraint.upper, vi);
          if (!sol.report.converged) {
            throw SolverError("state-constrained solve did not converge",
                              sol.report.feasibility_violation);
          }
          u = sol.u;
          row.newton_iters = sol.report.iterations;
          break;
        }
        case ConstraintMode::control: {
          ControlVIOptions vi;
          vi.c = options.c;
          vi.tol = options.tol;
          vi.max_iter = options.max_iter;
          vi.load_subdivisions = subdiv;
          const auto sol = solve_control_constrained(mesh, row.rho, target_field,
                                                     constraint.lower, constraint.upper, vi);
          if (!sol.report.converged) {
            throw SolverError("control-constrained solve did not converge",
                              sol.report.feasibility_violation);
          }
          u = sol.u;
          row.newton_iters = sol.report.iterations;
          break;
        }
      }

      row.err_l2 = l2_error(u, mesh, target_field, quad, subdiv);
      if (has_analytic_control(target.kind)) {
        row.err_h1 =
            h1_seminorm_error(u, mesh, target_gradient(target.kind, target.k), quad, subdiv);
      } else {
        row.err_h1 = kNan;
      }

      if (options.with_recovery && row.n % options.coarse_ratio == 0 &&
          has_analytic_control(target.kind)) {
        const Mesh coarse = build_structured_mesh(row.n / options.coarse_ratio);
        const auto rec = reconstruct_control(u, mesh, coarse);
        const auto mixed = restrict_rows_interior(assemble_mixed_mass(mesh, coarse), mesh);
        const auto stiffness = restrict_interior(assemble_stiffness(mesh), mesh);
        auto moments = mixed.apply(rec.z);
        const auto exact_moments = restrict_interior(
            assemble_load(mesh, exact_control_field(target.kind, target.k),
                          quad.refined(subdiv)),
            mesh);
        for (std::size_t i = 0; i < moments.size(); ++i) {
          moments[i] -= exact_moments[i];
        }
        row.err_control_dual = discrete_dual_norm(moments, stiffness);
      }
    } catch (const SolverError&) {
      row.failed = true;
      row.err_l2 = kNan;
      row.err_h1 = kNan;
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    table.rows.push_back(row);
  }

  // EOC columns from the completed rows.
  std::vector<double> hs;
  std::vector<double> el2;
  std::vector<double> eh1;
  for (const auto& row : table.rows) {
    hs.push_back(row.h);
    el2.push_back(row.failed ? kNan : row.err_l2);
    eh1.push_back(row.failed ? kNan : row.err_h1);
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto rate = [&](const std::vector<double>& err) {
      if (i == 0 || !(err[i - 1] > 0.0) || !(err[i] > 0.0) || hs[i - 1] == hs[i]) {
        return kNan;
      }
      return std::log(err[i - 1] / err[i]) / std::log(hs[i - 1] / hs[i]);
    };
    table.rows[i].eoc_l2 = rate(el2);
    table.rows[i].eoc_h1 = rate(eh1);
  }
  return table;
}

} // namespace ectrl
