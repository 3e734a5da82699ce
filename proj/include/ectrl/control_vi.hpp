#pragma once

#include <vector>

#include "ectrl/assembly.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/sparse.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

struct ControlVIOptions {
  double c = 1.0;
  double tol = 1e-5;
  int max_iter = 100;
  double inner_rel_tol = 1e-10; // initial unconstrained solve
  int load_subdivisions = 1;    // quadrature refinement for the target moments
  int moment_subdivisions = 4;  // quadrature refinement for the bound moments
  int dense_threshold = 500;    // dense saddle solve at or below this size
};

/// Result of the control-constrained active-set solve. All interior-sized
/// vectors follow interior_indices order. flux holds K u; the bound vectors
/// hold the moments of f_pm against the nodal basis.
struct ControlVISolution {
  NodalVector u; // full node set, zero on the boundary
  NodalVector u_interior;
  NodalVector w;    // interior multiplier
  NodalVector flux; // interior, K u
  NodalVector f_minus;
  NodalVector f_plus;
  std::vector<int> active_minus;
  std::vector<int> active_plus;
  SolveReport report;
};

/// Active-set solve of the control-constrained problem with weak box
/// constraints f_minus <= -laplace(u) <= f_plus, discretely
/// f_{-,i} <= (K u)_i <= f_{+,i} with load-vector moments of the bounds.
/// Bounds may coincide at single nodes (pinned flux); reversed bounds raise
/// std::invalid_argument. Each iteration solves the coupled saddle system
/// for (u, w) on the active set with a banded (or, for small meshes, dense)
/// direct factorization.
ControlVISolution solve_control_constrained(const Mesh& mesh, double rho,
                                            const ScalarField& target,
                                            const ScalarField& f_minus,
                                            const ScalarField& f_plus,
                                            const ControlVIOptions& options = {});

/// Max-norm of the componentwise min/max complementarity reformulation in
/// (w, K u), from the stored flux, multiplier and bound moments.
double control_complementarity_residual(const ControlVISolution& sol);

} // namespace ectrl
