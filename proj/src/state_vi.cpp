#include "ectrl/state_vi.hpp"

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

Partition classify(const NodalVector& u, const NodalVector& lambda,
                   const NodalVector& g_minus, const NodalVector& g_plus, double c) {
  Partition part;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double y_plus = lambda[k] + c * (g_plus[k] - u[k]);
    const double y_minus = lambda[k] + c * (g_minus[k] - u[k]);
    if (y_minus > 0.0) {
      part.minus.push_back(static_cast<int>(k));
    } else if (y_plus < 0.0) {
      part.plus.push_back(static_cast<int>(k));
    }
  }
  return part;
}

double feasibility_violation(const NodalVector& u, const NodalVector& g_minus,
                             const NodalVector& g_plus) {
  double viol = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] > g_plus[k]) {
      viol = std::max(viol, u[k] - g_plus[k]);
    }
    if (u[k] < g_minus[k]) {
      viol = std::max(viol, g_minus[k] - u[k]);
    }
  }
  return viol;
}

void solve_with_partition(const SparseSymMatrix& system, const NodalVector& load,
                          const NodalVector& g_minus, const NodalVector& g_plus,
                          const Partition& part, double inner_rel_tol, NodalVector& u,
                          NodalVector& lambda) {
  const int m = system.dim;

  u.assign(m, 0.0);
  std::vector<char> active(m, 0);
  for (int k : part.minus) {
    u[k] = g_minus[k];
    active[k] = 1;
  }
  for (int k : part.plus) {
    u[k] = g_plus[k];
    active[k] = 1;
  }

  std::vector<int> reduced_index(m, -1);
  std::vector<int> inactive;
  inactive.reserve(m);
  for (int k = 0; k < m; ++k) {
    if (!active[k]) {
      reduced_index[k] = static_cast<int>(inactive.size());
      inactive.push_back(k);
    }
  }

  // Reduced SPD system on the inactive set; active values go to the rhs.
  if (!inactive.empty()) {
    TripletBuilder builder(static_cast<int>(inactive.size()),
                           static_cast<int>(inactive.size()));
    NodalVector rhs(inactive.size(), 0.0);
    for (std::size_t r = 0; r < inactive.size(); ++r) {
      const int i = inactive[r];
      double b = load[i];
      for (int k = system.row_ptr[i]; k < system.row_ptr[i + 1]; ++k) {
        const int j = system.cols[k];
        if (reduced_index[j] >= 0) {
          builder.add(static_cast<int>(r), reduced_index[j], system.vals[k]);
        } else {
          b -= system.vals[k] * u[j];
        }
      }
      rhs[r] = b;
    }
    const auto reduced = builder.build_symmetric();
    const auto sol = solve_spd(reduced, rhs, inner_rel_tol);
    for (std::size_t r = 0; r < inactive.size(); ++r) {
      u[inactive[r]] = sol.x[r];
    }
  }

  // lambda from the stationarity equation on active rows, zero elsewhere.
  const auto su = system.apply(u);
  lambda.assign(m, 0.0);
  for (int k : part.minus) {
    lambda[k] = su[k] - load[k];
  }
  for (int k : part.plus) {
    lambda[k] = su[k] - load[k];
  }
}

} // namespace

void active_set_update(const SparseSymMatrix& system, const NodalVector& load,
                       const NodalVector& g_minus, const NodalVector& g_plus, double c,
                       double inner_rel_tol, NodalVector& u, NodalVector& lambda,
                       std::vector<int>* active_minus_out,
                       std::vector<int>* active_plus_out) {
  const auto part = classify(u, lambda, g_minus, g_plus, c);
  solve_with_partition(system, load, g_minus, g_plus, part, inner_rel_tol, u, lambda);
  if (active_minus_out) {
    *active_minus_out = part.minus;
  }
  if (active_plus_out) {
    *active_plus_out = part.plus;
  }
}

StateVISolution solve_state_constrained(const Mesh& mesh, double rho,
                                        const ScalarField& target,
                                        const ScalarField& g_minus,
                                        const ScalarField& g_plus,
                                        const StateVIOptions& options) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("solve_state_constrained: rho must be positive");
  }
  if (!(options.c > 0.0)) {
    throw std::invalid_argument("solve_state_constrained: c must be positive");
  }

  StateVISolution sol;
  sol.g_minus = sample_interior(mesh, g_minus);
  sol.g_plus = sample_interior(mesh, g_plus);
  for (std::size_t k = 0; k < sol.g_minus.size(); ++k) {
    if (!(sol.g_minus[k] < sol.g_plus[k])) {
      throw std::invalid_argument(
          "solve_state_constrained: barriers must satisfy g_minus < g_plus at all interior nodes");
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
  NodalVector lambda(m, 0.0);

  sol.report.tol = options.tol;
  sol.report.c = options.c;
  sol.report.inner_rel_tol = options.inner_rel_tol;
  sol.report.iterations = 1; // the initial solve uses the all-inactive partition

  Partition used; // empty active sets correspond to the initial solve
  for (;;) {
    const Partition part = classify(u, lambda, sol.g_minus, sol.g_plus, options.c);
    sol.report.active_minus_sizes.push_back(part.minus.size());
    sol.report.active_plus_sizes.push_back(part.plus.size());
    sol.report.feasibility_violation = feasibility_violation(u, sol.g_minus, sol.g_plus);
    if (part == used && sol.report.feasibility_violation < options.tol) {
      sol.report.converged = true;
      break;
    }
    if (sol.report.iterations >= options.max_iter) {
      break;
    }
    solve_with_partition(system, load, sol.g_minus, sol.g_plus, part, options.inner_rel_tol,
                         u, lambda);
    used = part;
    ++sol.report.iterations;
  }

  sol.u_interior = u;
  sol.lambda = std::move(lambda);
  sol.active_minus = used.minus;
  sol.active_plus = used.plus;
  sol.u = extend_by_zero(u, mesh);
  sol.report.complementarity_residual = complementarity_residual(sol);
  return sol;
}

double complementarity_residual(const StateVISolution& sol) {
  const double c = sol.report.c > 0.0 ? sol.report.c : 1.0;
  double res = 0.0;
  for (std::size_t k = 0; k < sol.lambda.size(); ++k) {
    const double yp = sol.lambda[k] + c * (sol.g_plus[k] - sol.u_interior[k]);
    const double ym = sol.lambda[k] + c * (sol.g_minus[k] - sol.u_interior[k]);
    const double f2 = sol.lambda[k] - std::min(0.0, yp) - std::max(0.0, ym);
    res = std::max(res, std::abs(f2));
  }
  return res;
}

} // namespace ectrl
