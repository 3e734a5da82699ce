#include "ectrl/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ectrl/assembly.hpp"
#include "ectrl/control_vi.hpp"
#include "ectrl/linsolve.hpp"
#include "ectrl/mesh.hpp"
#include "ectrl/quadrature.hpp"
#include "ectrl/recovery.hpp"
#include "ectrl/state_vi.hpp"
#include "ectrl/types.hpp"
#include "ectrl/unconstrained.hpp"

namespace ectrl::selfcheck {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) {
    f *= i;
  }
  return f;
}

ScalarField random_trig_field(std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::array<double, 4> a{dist(rng), dist(rng), dist(rng), dist(rng)};
  return [a](double x, double y) {
    double s = 0.0;
    int idx = 0;
    for (int p = 1; p <= 2; ++p) {
      for (int q = 1; q <= 2; ++q) {
        s += a[idx++] * std::sin(p * M_PI * x) * std::sin(q * M_PI * y);
      }
    }
    return s;
  };
}

struct DiscreteProblem {
  Mesh mesh;
  SparseSymMatrix system;    // M + rho K, interior
  SparseSymMatrix stiffness; // K, interior
  NodalVector load;
  double rho = 0.0;
};

DiscreteProblem discretize(int n, const ScalarField& target) {
  DiscreteProblem p;
  p.mesh = build_structured_mesh(n);
  p.rho = p.mesh.h * p.mesh.h;
  const auto mass = restrict_interior(assemble_mass(p.mesh), p.mesh);
  p.stiffness = restrict_interior(assemble_stiffness(p.mesh), p.mesh);
  p.system = SparseSymMatrix::add_scaled(mass, p.rho, p.stiffness);
  p.load =
      restrict_interior(assemble_load(p.mesh, target, QuadratureRule::degree5()), p.mesh);
  return p;
}

// Dense solve of the equality-constrained subproblem for a fixed state
// pattern: entries with pattern 1/2 are pinned to the lower/upper barrier.
bool state_pattern_solution(const DenseMatrix& system, const NodalVector& load,
                            const NodalVector& g_minus, const NodalVector& g_plus,
                            const std::vector<int>& pattern, NodalVector& u,
                            NodalVector& lambda) {
  const int m = static_cast<int>(load.size());
  std::vector<int> inactive;
  u.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    if (pattern[k] == 1) {
      u[k] = g_minus[k];
    } else if (pattern[k] == 2) {
      u[k] = g_plus[k];
    } else {
      inactive.push_back(k);
    }
  }
  const int mi = static_cast<int>(inactive.size());
  if (mi > 0) {
    DenseMatrix a(mi, mi);
    std::vector<double> b(mi, 0.0);
    for (int r = 0; r < mi; ++r) {
      b[r] = load[inactive[r]];
      for (int c = 0; c < mi; ++c) {
        a(r, c) = system(inactive[r], inactive[c]);
      }
      for (int k = 0; k < m; ++k) {
        if (pattern[k] != 0) {
          b[r] -= system(inactive[r], k) * u[k];
        }
      }
    }
    const auto x = dense_solve(std::move(a), std::move(b));
    for (int r = 0; r < mi; ++r) {
      u[inactive[r]] = x[r];
    }
  }
  lambda.assign(m, 0.0);
  for (int k = 0; k < m; ++k) {
    if (pattern[k] != 0) {
      double su = 0.0;
      for (int j = 0; j < m; ++j) {
        su += system(k, j) * u[j];
      }
      lambda[k] = su - load[k];
    }
  }
  return true;
}

bool state_pattern_kkt_ok(const NodalVector& u, const NodalVector& lambda,
                          const NodalVector& g_minus, const NodalVector& g_plus,
                          const std::vector<int>& pattern, double eps) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    switch (pattern[k]) {
      case 0:
        if (u[k] < g_minus[k] - eps || u[k] > g_plus[k] + eps) return false;
        break;
      case 1:
        if (lambda[k] < -eps) return false;
        break;
      case 2:
        if (lambda[k] > eps) return false;
        break;
    }
  }
  return true;
}

double objective(const DenseMatrix& system, const NodalVector& load, const NodalVector& u) {
  const int m = static_cast<int>(u.size());
  double quad = 0.0;
  double lin = 0.0;
  for (int i = 0; i < m; ++i) {
    double su = 0.0;
    for (int j = 0; j < m; ++j) {
      su += system(i, j) * u[j];
    }
    quad += u[i] * su;
    lin += load[i] * u[i];
  }
  return 0.5 * quad - lin;
}

bool next_pattern(std::vector<int>& pattern) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (++pattern[i] < 3) {
      return true;
    }
    pattern[i] = 0;
  }
  return false;
}

} // namespace

double quadrature_monomial_error() {
  const auto rule = QuadratureRule::degree5();
  double worst = 0.0;
  for (int a = 0; a + 0 <= 5; ++a) {
    for (int b = 0; a + b <= 5; ++b) {
      double approx = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        const double x = rule.points[q][1];
        const double y = rule.points[q][2];
        approx += 0.5 * rule.weights[q] * std::pow(x, a) * std::pow(y, b);
      }
      const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
      worst = std::max(worst, std::abs(approx - exact));
    }
  }
  return worst;
}

double state_oracle_deviation(int n, int instances, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;

  for (int inst = 0; inst < instances; ++inst) {
    const auto target = random_trig_field(rng, 1.0);
    const auto base = random_trig_field(rng, 0.3);
    const double offset = 0.02 + 0.08 * unit(rng);
    const double gap0 = 0.05 + 0.15 * unit(rng);
    const double gap1 = 0.3 * unit(rng);
    ScalarField g_minus = [base, offset](double x, double y) {
      return base(x, y) - offset;
    };
    ScalarField g_plus = [base, offset, gap0, gap1](double x, double y) {
      return base(x, y) - offset + gap0 +
             gap1 * std::sin(M_PI * x) * std::sin(M_PI * y);
    };

    const auto p = discretize(n, target);
    StateVIOptions options;
    options.inner_rel_tol = 1e-13;
    const auto sol = solve_state_constrained(p.mesh, p.rho, target, g_minus, g_plus, options);

    const auto g_minus_v = sample_interior(p.mesh, g_minus);
    const auto g_plus_v = sample_interior(p.mesh, g_plus);
    const auto dense = to_dense(p.system);
    const int m = p.system.dim;

    std::vector<int> pattern(m, 0);
    NodalVector best_u;
    double best_objective = 0.0;
    bool found = false;
    NodalVector u;
    NodalVector lambda;
    do {
      state_pattern_solution(dense, p.load, g_minus_v, g_plus_v, pattern, u, lambda);
      if (state_pattern_kkt_ok(u, lambda, g_minus_v, g_plus_v, pattern, 1e-9)) {
        const double obj = objective(dense, p.load, u);
        if (!found || obj < best_objective) {
          best_objective = obj;
          best_u = u;
          found = true;
        }
      }
    } while (next_pattern(pattern));

    if (!found) {
      return 1.0; // enumeration must find the minimizer; report loudly
    }
    for (int k = 0; k < m; ++k) {
      worst = std::max(worst, std::abs(best_u[k] - sol.u_interior[k]));
    }
  }
  return worst;
}

double control_oracle_deviation(int n, int instances, unsigned seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;

  for (int inst = 0; inst < instances; ++inst) {
    const auto target = random_trig_field(rng, 1.0);
    const auto base = random_trig_field(rng, 1.5);
    const double offset = 0.2 + 1.5 * unit(rng);
    const double gap0 = 0.3 + 2.0 * unit(rng);
    const double gap1 = 3.0 * unit(rng);
    ScalarField f_minus = [base, offset](double x, double y) {
      return base(x, y) - offset;
    };
    ScalarField f_plus = [base, offset, gap0, gap1](double x, double y) {
      return base(x, y) - offset + gap0 +
             gap1 * std::sin(M_PI * x) * std::sin(M_PI * y);
    };

    const auto p = discretize(n, target);
    ControlVIOptions options;
    options.inner_rel_tol = 1e-13;
    const auto sol =
        solve_control_constrained(p.mesh, p.rho, target, f_minus, f_plus, options);

    const auto dense_system = to_dense(p.system);
    const auto dense_stiffness = to_dense(p.stiffness);
    const int m = p.system.dim;
    const auto& fm = sol.f_minus;
    const auto& fp = sol.f_plus;

    std::vector<int> pattern(m, 0);
    NodalVector best_u;
    double best_objective = 0.0;
    bool found = false;
    do {
      std::vector<int> active;
      for (int k = 0; k < m; ++k) {
        if (pattern[k] != 0) {
          active.push_back(k);
        }
      }
      const int na = static_cast<int>(active.size());
      const int dim = m + na;
      DenseMatrix a(dim, dim);
      std::vector<double> rhs(dim, 0.0);
      for (int i = 0; i < m; ++i) {
        rhs[i] = p.load[i];
        for (int j = 0; j < m; ++j) {
          a(i, j) = dense_system(i, j);
        }
        for (int t = 0; t < na; ++t) {
          a(i, m + t) = -dense_stiffness(i, active[t]);
        }
      }
      for (int t = 0; t < na; ++t) {
        const int k = active[t];
        rhs[m + t] = pattern[k] == 1 ? fm[k] : fp[k];
        for (int j = 0; j < m; ++j) {
          a(m + t, j) = dense_stiffness(k, j);
        }
      }
      NodalVector u;
      try {
        u = dense_solve(std::move(a), std::move(rhs));
      } catch (const SolverError&) {
        continue; // singular pattern, not a candidate
      }

      // KKT screen: inactive flux inside the bounds, multiplier signs on
      // the active rows.
      NodalVector flux(m, 0.0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          flux[i] += dense_stiffness(i, j) * u[j];
        }
      }
      const double eps = 1e-9;
      bool ok = true;
      for (int k = 0; k < m && ok; ++k) {
        if (pattern[k] == 0) {
          ok = flux[k] >= fm[k] - eps && flux[k] <= fp[k] + eps;
        }
      }
      for (int t = 0; t < na && ok; ++t) {
        const double wk = u[m + t];
        ok = pattern[active[t]] == 1 ? (wk >= -eps) : (wk <= eps);
      }
      if (!ok) {
        continue;
      }
      NodalVector u_only(u.begin(), u.begin() + m);
      const double obj = objective(dense_system, p.load, u_only);
      if (!found || obj < best_objective) {
        best_objective = obj;
        best_u = u_only;
        found = true;
      }
    } while (next_pattern(pattern));

    if (!found) {
      return 1.0;
    }
    for (int k = 0; k < m; ++k) {
      worst = std::max(worst, std::abs(best_u[k] - sol.u_interior[k]));
    }
  }
  return worst;
}

double newton_equivalence_deviation(int instances, unsigned seed) {
  std::mt19937_64 rng(seed ^ 0x517cc1b727220a95ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double c = 1.0;
  double worst = 0.0;

  for (int inst = 0; inst < instances; ++inst) {
    const auto target = random_trig_field(rng, 1.0);
    const auto p = discretize(4, target);
    const int m = p.system.dim;

    const auto base = random_trig_field(rng, 0.3);
    const double offset = 0.02 + 0.08 * unit(rng);
    const double gap = 0.1 + 0.3 * unit(rng);
    NodalVector g_minus(m);
    NodalVector g_plus(m);
    const auto interior = interior_indices(p.mesh);
    for (int k = 0; k < m; ++k) {
      const auto& node = p.mesh.nodes[interior[k]];
      g_minus[k] = base(node[0], node[1]) - offset;
      g_plus[k] = g_minus[k] + gap;
    }

    // random iterate, nudged off the kink set of the min/max reformulation
    NodalVector u(m);
    NodalVector lambda(m);
    for (int k = 0; k < m; ++k) {
      u[k] = g_minus[k] + (g_plus[k] - g_minus[k]) * (-0.3 + 1.6 * unit(rng));
      lambda[k] = 0.5 * sym(rng);
      if (std::abs(lambda[k] + c * (g_plus[k] - u[k])) < 1e-6) {
        u[k] += 1e-3;
      }
      if (std::abs(lambda[k] + c * (g_minus[k] - u[k])) < 1e-6) {
        u[k] -= 1e-3;
      }
    }

    // explicit semi-smooth Newton step with the slant-derivative Jacobian
    const auto dense = to_dense(p.system);
    DenseMatrix jac(2 * m, 2 * m);
    std::vector<double> f(2 * m, 0.0);
    for (int k = 0; k < m; ++k) {
      const double yp = lambda[k] + c * (g_plus[k] - u[k]);
      const double ym = lambda[k] + c * (g_minus[k] - u[k]);
      const double dmin = yp < 0.0 ? 1.0 : 0.0;
      const double dmax = ym > 0.0 ? 1.0 : 0.0;

      double su = 0.0;
      for (int j = 0; j < m; ++j) {
        jac(k, j) = dense(k, j);
        su += dense(k, j) * u[j];
      }
      jac(k, m + k) = -1.0;
      f[k] = su - lambda[k] - p.load[k];

      jac(m + k, k) = c * (dmin + dmax);
      jac(m + k, m + k) = 1.0 - (dmin + dmax);
      f[m + k] = lambda[k] - std::min(0.0, yp) - std::max(0.0, ym);
    }
    const auto delta = dense_solve(std::move(jac), std::move(f));
    NodalVector u_newton(m);
    NodalVector lambda_newton(m);
    for (int k = 0; k < m; ++k) {
      u_newton[k] = u[k] - delta[k];
      lambda_newton[k] = lambda[k] - delta[m + k];
    }

    NodalVector u_as = u;
    NodalVector lambda_as = lambda;
    active_set_update(p.system, p.load, g_minus, g_plus, c, 1e-14, u_as, lambda_as);

    for (int k = 0; k < m; ++k) {
      worst = std::max(worst, std::abs(u_newton[k] - u_as[k]));
      worst = std::max(worst, std::abs(lambda_newton[k] - lambda_as[k]));
    }
  }
  return worst;
}

double recovery_dense_deviation() {
  const auto [coarse, fine] = coarse_fine_pair(1);
  NodalVector u(fine.node_count(), 0.0);
  for (int k = 0; k < fine.node_count(); ++k) {
    if (!fine.boundary_mask[k]) {
      u[k] = std::sin(M_PI * fine.nodes[k][0]) * std::sin(M_PI * fine.nodes[k][1]) +
             0.25 * fine.nodes[k][0];
    }
  }

  const auto rec = reconstruct_control(u, fine, coarse, 1e-12);

  const auto mixed = restrict_rows_interior(assemble_mixed_mass(fine, coarse), fine);
  const auto stiffness = restrict_interior(assemble_stiffness(fine), fine);
  const auto u_int = restrict_interior(u, fine);
  const int m = stiffness.dim;
  const int nc = mixed.n_cols;

  // Dense Schur matrix from explicit stiffness solves, column by column.
  DenseMatrix schur(nc, nc);
  std::vector<NodalVector> kinv_cols(nc);
  for (int l = 0; l < nc; ++l) {
    std::vector<double> e(nc, 0.0);
    e[l] = 1.0;
    const auto col = mixed.apply(e);
    kinv_cols[l] = dense_solve(to_dense(stiffness), col);
  }
  for (int l = 0; l < nc; ++l) {
    for (int k = 0; k < nc; ++k) {
      double s = 0.0;
      std::vector<double> ek(nc, 0.0);
      ek[k] = 1.0;
      const auto colk = mixed.apply(ek);
      for (int i = 0; i < m; ++i) {
        s += colk[i] * kinv_cols[l][i];
      }
      schur(k, l) = s;
    }
  }
  const auto z_dense = dense_solve(std::move(schur), mixed.apply_transpose(u_int));

  double worst = 0.0;
  for (int l = 0; l < nc; ++l) {
    worst = std::max(worst, std::abs(z_dense[l] - rec.z[l]));
  }
  return worst;
}

} // namespace ectrl::selfcheck
