#pragma once

#include "ectrl/assembly.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/quadrature.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

/// Solves the regularized tracking problem without constraints:
/// (M + rho K) u = load(target) on interior nodes, zero on the boundary.
/// Returns the coefficient vector on the full node set.
NodalVector solve_unconstrained(const Mesh& mesh, double rho, const ScalarField& target,
                                const QuadratureRule& quad = QuadratureRule::degree5(),
                                double rel_tol = 1e-10);

/// Interior-space solve for a preassembled system; shared by the
/// variational-inequality solvers for their initial iterate.
NodalVector solve_regularized_interior(const SparseSymMatrix& system_interior,
                                       const NodalVector& load_interior, double rel_tol);

/// Discrete objective 0.5 u^T (M + rho K) u - load^T u on interior data.
double discrete_objective(const SparseSymMatrix& system_interior,
                          const NodalVector& load_interior, const NodalVector& u_interior);

} // namespace ectrl
