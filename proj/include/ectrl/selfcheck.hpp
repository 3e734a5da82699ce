#pragma once

namespace ectrl::selfcheck {

/// Worst error of the 7-point rule on monomials x^a y^b, a + b <= 5,
/// against the exact reference-triangle integrals.
double quadrature_monomial_error();

/// Max-norm deviation between the state-constrained active-set solve and
/// an exhaustive enumeration of all 3^m active-set sign patterns, keeping
/// the KKT-consistent minimizer. Mesh subdivision n must stay tiny (the
/// oracle cost is 3^((n-1)^2) dense solves).
double state_oracle_deviation(int n, int instances, unsigned seed);

/// Same cross-check for the control-constrained solve: the oracle
/// enumerates flux-constraint patterns and solves the dense KKT saddle
/// systems directly.
double control_oracle_deviation(int n, int instances, unsigned seed);

/// Max-norm difference between one explicit semi-smooth Newton step (dense
/// slant-derivative Jacobian) and one active-set update, from random
/// iterates on random instances.
double newton_equivalence_deviation(int instances, unsigned seed);

/// Deviation of the nested-iteration control recovery from a dense Schur
/// complement formed with an explicit stiffness inverse, on the smallest
/// coarse/fine pair.
double recovery_dense_deviation();

} // namespace ectrl::selfcheck
