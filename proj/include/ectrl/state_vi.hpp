#pragma once

#include <vector>

#include "ectrl/assembly.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/sparse.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

struct StateVIOptions {
  double c = 1.0;
  double tol = 1e-5;
  int max_iter = 100;
  double inner_rel_tol = 1e-10;
  int load_subdivisions = 1; // quadrature refinement for the target moments
};

/// Result of the state-constrained active-set solve. The multiplier, the
/// interior state copy and the barrier samples live on interior nodes in
/// interior_indices order.
struct StateVISolution {
  NodalVector u;          // full node set, zero on the boundary
  NodalVector u_interior; // interior restriction of u
  NodalVector lambda;     // interior
  NodalVector g_minus;    // interior nodal barrier values
  NodalVector g_plus;
  std::vector<int> active_minus; // interior-local indices at termination
  std::vector<int> active_plus;
  SolveReport report;
};

/// Active-set / semi-smooth Newton solve of the state-constrained problem:
/// minimize the regularized tracking functional subject to nodal barriers
/// g_minus <= u <= g_plus. Barriers must satisfy g_minus < g_plus at every
/// interior node (std::invalid_argument otherwise). Non-convergence within
/// max_iter is reported, not thrown.
StateVISolution solve_state_constrained(const Mesh& mesh, double rho,
                                        const ScalarField& target,
                                        const ScalarField& g_minus,
                                        const ScalarField& g_plus,
                                        const StateVIOptions& options = {});

/// One active-set iteration on interior data: partitions by the predictors
/// y_pm = lambda + c (g_pm - u), enforces u on the active sets, solves the
/// reduced SPD system on the inactive set and recovers lambda. Overwrites
/// (u, lambda) with the new iterate.
void active_set_update(const SparseSymMatrix& system, const NodalVector& load,
                       const NodalVector& g_minus, const NodalVector& g_plus, double c,
                       double inner_rel_tol, NodalVector& u, NodalVector& lambda,
                       std::vector<int>* active_minus_out = nullptr,
                       std::vector<int>* active_plus_out = nullptr);

/// Max-norm of the componentwise min/max complementarity reformulation,
/// evaluated from the stored interior state, multiplier and barriers.
double complementarity_residual(const StateVISolution& sol);

} // namespace ectrl
