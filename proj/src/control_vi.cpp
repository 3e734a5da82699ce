#include "ectrl/control_vi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ectrl/linsolve.hpp"
#include "ectrl/quadrature.hpp"
#include "ectrl/unconstrained.hpp"

namespace ectrl {

namespace {

struct Partition {
  std::vector<int> minus;
  std::vector<int> plus;

  bool operator==(const Partition& other) const = default;
};

Partition classify(const NodalVector& flux, const NodalVector& w, const NodalVector& f_minus,
                   const NodalVector& f_plus, double c) {
  Partition part;
  for (std::size_t k = 0; k < flux.size(); ++k) {
    // Coinciding bounds pin the flux in every complementarity case (the
    // inactive branch would also force flux = f); keep one canonical label
    // so the partition cannot flip between equivalent states.
    if (f_minus[k] == f_plus[k]) {
      part.minus.push_back(static_cast<int>(k));
      continue;
    }
    const double y_plus = w[k] + c * (f_plus[k] - flux[k]);
    const double y_minus = w[k] + c * (f_minus[k] - flux[k]);
    if (y_minus > 0.0) {
      part.minus.push_back(static_cast<int>(k));
    } else if (y_plus < 0.0) {
      part.plus.push_back(static_cast<int>(k));
    }
  }
  return part;
}

double feasibility_violation(const NodalVector& flux, const NodalVector& f_minus,
                             const NodalVector& f_plus) {
  double viol = 0.0;
  for (std::size_t k = 0; k < flux.size(); ++k) {
    if (flux[k] > f_plus[k]) {
      viol = std::max(viol, flux[k] - f_plus[k]);
    }
    if (flux[k] < f_minus[k]) {
      viol = std::max(viol, f_minus[k] - flux[k]);
    }
  }
  return viol;
}

// Coupled system for one active-set iteration, in unknowns (u, w_A):
//   (M + rho K) u - K[:,A] w_A = load        (all interior rows)
//   (K u)_a = bound_a                        (a in A)
// Unknowns are interleaved per node so the system stays banded; inactive
// multipliers are identically zero and eliminated.
void solve_with_partition(const SparseSymMatrix& system, const SparseSymMatrix& stiffness,
                          const NodalVector& load, const NodalVector& f_minus,
                          const NodalVector& f_plus, const Partition& part,
                          int dense_threshold, NodalVector& u, NodalVector& w) {
  const int m = system.dim;

  std::vector<char> which(m, 0); // 0 inactive, 1 lower, 2 upper
  for (int k : part.minus) which[k] = 1;
  for (int k : part.plus) which[k] = 2;

  std::vector<int> pos_u(m, -1);
  std::vector<int> pos_w(m, -1);
  int dim = 0;
  for (int k = 0; k < m; ++k) {
    pos_u[k] = dim++;
    if (which[k]) {
      pos_w[k] = dim++;
    }
  }

  std::vector<double> rhs(dim, 0.0);
  for (int k = 0; k < m; ++k) {
    rhs[pos_u[k]] = load[k];
    if (which[k] == 1) {
      rhs[pos_w[k]] = f_minus[k];
    } else if (which[k] == 2) {
      rhs[pos_w[k]] = f_plus[k];
    }
  }

  auto assemble = [&](auto&& add) {
    for (int i = 0; i < m; ++i) {
      for (int k = system.row_ptr[i]; k < system.row_ptr[i + 1]; ++k) {
        add(pos_u[i], pos_u[system.cols[k]], system.vals[k]);
      }
      for (int k = stiffness.row_ptr[i]; k < stiffness.row_ptr[i + 1]; ++k) {
        const int j = stiffness.cols[k];
        if (which[j]) {
          add(pos_u[i], pos_w[j], -stiffness.vals[k]);
        }
        if (which[i]) {
          add(pos_w[i], pos_u[j], stiffness.vals[k]);
        }
      }
    }
  };

  std::vector<double> solution;
  if (m <= dense_threshold) {
    DenseMatrix dense(dim, dim);
    assemble([&](int i, int j, double v) { dense(i, j) += v; });
    solution = dense_solve(std::move(dense), std::move(rhs));
  } else {
    int band = 0;
    assemble([&](int i, int j, double) { band = std::max(band, std::abs(i - j)); });
    BandSystem banded(dim, band, band);
    assemble([&](int i, int j, double v) { banded.add(i, j, v); });
    solution = banded.solve(std::move(rhs));
  }

  u.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    u[k] = solution[pos_u[k]];
    if (which[k]) {
      w[k] = solution[pos_w[k]];
    }
  }
}

} // namespace

ControlVISolution solve_control_constrained(const Mesh& mesh, double rho,
                                            const ScalarField& target,
                                            const ScalarField& f_minus,
                                            const ScalarField& f_plus,
                                            const ControlVIOptions& options) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("solve_control_constrained: rho must be positive");
  }
  if (!(options.c > 0.0)) {
    throw std::invalid_argument("solve_control_constrained: c must be positive");
  }

  ControlVISolution sol;
  const auto moment_quad = QuadratureRule::degree5().refined(options.moment_subdivisions);
  sol.f_minus = restrict_interior(assemble_load(mesh, f_minus, moment_quad), mesh);
  sol.f_plus = restrict_interior(assemble_load(mesh, f_plus, moment_quad), mesh);
  for (std::size_t k = 0; k < sol.f_minus.size(); ++k) {
    if (sol.f_minus[k] > sol.f_plus[k]) {
      throw std::invalid_argument(
          "solve_control_constrained: bound moments must satisfy f_minus <= f_plus");
    }
  }

  const auto mass = restrict_interior(assemble_mass(mesh), mesh);
  const auto stiffness = restrict_interior(assemble_stiffness(mesh), mesh);
  const auto system = SparseSymMatrix::add_scaled(mass, rho, stiffness);
  const auto load = restrict_interior(
      assemble_load(mesh, target,
                    QuadratureRule::degree5().refined(options.load_subdivisions)),
      mesh);

  const int m = system.dim;
  NodalVector u = solve_regularized_interior(system, load, options.inner_rel_tol);
  NodalVector w(m, 0.0);
  NodalVector flux = stiffness.apply(u);

  sol.report.tol = options.tol;
  sol.report.c = options.c;
  sol.report.inner_rel_tol = options.inner_rel_tol;
  sol.report.iterations = 1;

  Partition used;
  for (;;) {
    const Partition part = classify(flux, w, sol.f_minus, sol.f_plus, options.c);
    sol.report.active_minus_sizes.push_back(part.minus.size());
    sol.report.active_plus_sizes.push_back(part.plus.size());
    sol.report.feasibility_violation = feasibility_violation(flux, sol.f_minus, sol.f_plus);
    if (part == used && sol.report.feasibility_violation < options.tol) {
      sol.report.converged = true;
      break;
    }
    if (sol.report.iterations >= options.max_iter) {
      break;
    }
    solve_with_partition(system, stiffness, load, sol.f_minus, sol.f_plus, part,
                         options.dense_threshold, u, w);
    flux = stiffness.apply(u);
    used = part;
    ++sol.report.iterations;
  }

  sol.u_interior = u;
  sol.w = std::move(w);
  sol.flux = std::move(flux);
  sol.active_minus = used.minus;
  sol.active_plus = used.plus;
  sol.u = extend_by_zero(u, mesh);
  sol.report.complementarity_residual = control_complementarity_residual(sol);
  return sol;
}

double control_complementarity_residual(const ControlVISolution& sol) {
  const double c = sol.report.c > 0.0 ? sol.report.c : 1.0;
  double res = 0.0;
  for (std::size_t k = 0; k < sol.w.size(); ++k) {
    const double yp = sol.w[k] + c * (sol.f_plus[k] - sol.flux[k]);
    const double ym = sol.w[k] + c * (sol.f_minus[k] - sol.flux[k]);
    const double f2 = sol.w[k] - std::min(0.0, yp) - std::max(0.0, ym);
    res = std::max(res, std::abs(f2));
  }
  return res;
}

} // namespace ectrl
