#include "ectrl/recovery.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ectrl/assembly.hpp"
#include "ectrl/linsolve.hpp"

namespace ectrl {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) {
    s += x * x;
  }
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

} // namespace

ControlRecovery reconstruct_control(const NodalVector& u_fine, const Mesh& fine,
                                    const Mesh& coarse, double rel_tol) {
  if (static_cast<int>(u_fine.size()) != fine.node_count()) {
    throw std::invalid_argument("reconstruct_control: state size does not match fine mesh");
  }

  const auto mixed = restrict_rows_interior(assemble_mixed_mass(fine, coarse), fine);
  const auto stiffness = restrict_interior(assemble_stiffness(fine), fine);
  const BandCholesky factor(stiffness);
  const auto u_int = restrict_interior(u_fine, fine);

  const int n = mixed.n_cols;
  ControlRecovery out;
  out.z.assign(n, 0.0);

  const auto b = mixed.apply_transpose(u_int);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    out.p.assign(fine.node_count(), 0.0);
    return out;
  }

  auto schur_apply = [&](const std::vector<double>& y) {
    return mixed.apply_transpose(factor.solve(mixed.apply(y)));
  };

  // Plain CG on the Schur operator; it is SPD under the h = H/4 pairing.
  std::vector<double> r = b;
  std::vector<double> p = r;
  double rr = dot(r, r);
  const int max_iter = 10 * n + 100;
  double rel = 1.0;
  bool converged = false;
  for (int it = 1; it <= max_iter; ++it) {
    const auto q = schur_apply(p);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      throw SolverError("reconstruct_control: Schur operator lost definiteness "
                        "(mesh condition violated?)",
                        rel);
    }
    const double alpha = rr / pq;
    for (int i = 0; i < n; ++i) {
      out.z[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    const double rr_next = dot(r, r);
    rel = std::sqrt(rr_next) / bnorm;
    out.outer_iterations = it;
    if (rel <= rel_tol) {
      converged = true;
      break;
    }
    const double beta = rr_next / rr;
    for (int i = 0; i < n; ++i) {
      p[i] = r[i] + beta * p[i];
    }
    rr = rr_next;
  }
  if (!converged) {
    throw SolverError("reconstruct_control: outer CG did not reach tolerance " +
                          std::to_string(rel_tol) + " (achieved " + std::to_string(rel) + ")",
                      rel);
  }

  out.relative_residual = rel;
  out.p = extend_by_zero(factor.solve(mixed.apply(out.z)), fine);
  return out;
}

double discrete_dual_norm(const NodalVector& moments_interior,
                          const SparseSymMatrix& stiffness_interior, double rel_tol) {
  const auto sol = solve_spd(stiffness_interior, moments_interior, rel_tol);
  return std::sqrt(std::max(0.0, dot(moments_interior, sol.x)));
}

} // namespace ectrl
