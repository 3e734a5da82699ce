#include "ectrl/unconstrained.hpp"

#include <stdexcept>

#include "ectrl/linsolve.hpp"

namespace ectrl {

NodalVector solve_unconstrained(const Mesh& mesh, double rho, const ScalarField& target,
                                const QuadratureRule& quad, double rel_tol) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("solve_unconstrained: rho must be positive");
  }
  const auto mass = restrict_interior(assemble_mass(mesh), mesh);
  const auto stiffness = restrict_interior(assemble_stiffness(mesh), mesh);
  const auto system = SparseSymMatrix::add_scaled(mass, rho, stiffness);
  const auto load = restrict_interior(assemble_load(mesh, target, quad), mesh);
  return extend_by_zero(solve_regularized_interior(system, load, rel_tol), mesh);
}

NodalVector solve_regularized_interior(const SparseSymMatrix& system_interior,
                                       const NodalVector& load_interior, double rel_tol) {
  return solve_spd(system_interior, load_interior, rel_tol).x;
}

double discrete_objective(const SparseSymMatrix& system_interior,
                          const NodalVector& load_interior, const NodalVector& u_interior) {
  const auto su = system_interior.apply(u_interior);
  double quad_term = 0.0;
  double lin_term = 0.0;
  for (std::size_t i = 0; i < u_interior.size(); ++i) {
    quad_term += u_interior[i] * su[i];
    lin_term += load_interior[i] * u_interior[i];
  }
  return 0.5 * quad_term - lin_term;
}

} // namespace ectrl
