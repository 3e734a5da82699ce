#pragma once

#include "ectrl/mesh.hpp"
#include "ectrl/sparse.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

struct ControlRecovery {
  ElementVector z; // coefficients on the coarse piecewise-constant space
  NodalVector p;   // auxiliary state K^{-1} H z, full fine node set
  int outer_iterations = 0;
  double relative_residual = 0.0;
};

/// Recovers the piecewise-constant control on the coarse mesh from the fine
/// state via the Schur complement system H^T K^{-1} H z = H^T u, run as an
/// outer conjugate-gradient iteration; the stiffness inverse is applied
/// through a one-time banded Cholesky factorization. Requires the nested
/// h = H/4 pair from coarse_fine_pair (std::invalid_argument otherwise);
/// throws SolverError when the outer iteration stalls, which signals a
/// violated mesh condition.
ControlRecovery reconstruct_control(const NodalVector& u_fine, const Mesh& fine,
                                    const Mesh& coarse, double rel_tol = 1e-10);

/// Discrete realization of the H^{-1} norm on the P1 space:
/// sqrt(b^T K^{-1} b) for a vector b of moments against interior basis
/// functions.
double discrete_dual_norm(const NodalVector& moments_interior,
                          const SparseSymMatrix& stiffness_interior,
                          double rel_tol = 1e-10);

} // namespace ectrl
