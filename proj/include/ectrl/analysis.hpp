#pragma once

#include <string>
#include <vector>

#include "ectrl/mesh.hpp"
#include "ectrl/quadrature.hpp"
#include "ectrl/targets.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

/// L2 norm of u_h - exact; each element is split into subdivisions^2
/// congruent subtriangles before applying the rule.
double l2_error(const NodalVector& u, const Mesh& mesh, const ScalarField& exact,
                const QuadratureRule& quad, int subdivisions = 1);

/// L2 norm of grad(u_h) - exact_gradient; grad(u_h) is per-element constant.
double h1_seminorm_error(const NodalVector& u, const Mesh& mesh,
                         const GradientField& exact_gradient, const QuadratureRule& quad,
                         int subdivisions = 1);

/// Estimated orders of convergence; entry i relates rows i-1 and i, entry 0
/// (and any undefined ratio) is NaN.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

struct StudyOptions {
  double c = 1.0;
  double tol = 1e-5;
  int max_iter = 100;
  double rho_override = -1.0; // < 0 selects the coupling rho = h^2
  int subdivisions = -1;      // < 0 selects 1 for u1 and 4 for u2 / u3
  bool with_recovery = false; // reconstruct the control on the h = H/4 pair
  int coarse_ratio = 4;
};

struct StudyRow {
  int level = 0;
  int n = 0;
  double h = 0.0;
  double rho = 0.0;
  int dofs = 0;
  double err_l2 = 0.0;
  double err_h1 = 0.0;
  double eoc_l2 = 0.0;
  double eoc_h1 = 0.0;
  int newton_iters = 0;
  double wall_ms = 0.0;
  bool failed = false;
  double err_control_dual = 0.0; // discrete H^{-1} control error, NaN if not computed
};

struct ConvergenceTable {
  std::string target_name;
  std::string constraint_name;
  std::vector<StudyRow> rows;
};

/// Runs the refinement study with the coupling rho = h^2 (unless
/// overridden), dispatching to the unconstrained, state-constrained or
/// control-constrained solver per constraint mode. Solver failures mark the
/// affected row instead of aborting the study.
ConvergenceTable run_convergence_study(const TargetSpec& target,
                                       const ConstraintSpec& constraint,
                                       const std::vector<int>& levels,
                                       const StudyOptions& options = {});

/// Default quadrature subdivision count used for a target's moments and
/// error integrands.
int default_subdivisions(TargetKind kind);

} // namespace ectrl
