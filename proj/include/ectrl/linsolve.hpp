#pragma once

#include <functional>
#include <vector>

#include "ectrl/sparse.hpp"
#include "ectrl/types.hpp"

namespace ectrl {

struct PcgResult {
  NodalVector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Called after each iterate update with (iteration, current iterate).
using PcgMonitor = std::function<void(int, const NodalVector&)>;

/// Jacobi-preconditioned conjugate gradients for SPD systems.
/// Terminates when ||b - Ax||_2 <= rel_tol * ||b||_2; throws SolverError
/// (carrying the achieved relative residual) if max_iter is exceeded.
/// max_iter < 0 selects the default 10 * dim.
PcgResult solve_spd(const SparseSymMatrix& a, const NodalVector& b,
                    double rel_tol = 1e-10, int max_iter = -1,
                    const PcgMonitor& monitor = {});

/// A^{-1} (B y) with the inner solve run at rel_tol.
NodalVector apply_inverse(const SparseSymMatrix& a, const RectSparseMatrix& b,
                          const std::vector<double>& y, double rel_tol = 1e-10);

/// Dense column-major matrix; fallback solver and test oracle territory.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a; // column-major

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(j) * rows + i]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(j) * rows + i]; }
};

DenseMatrix to_dense(const SparseSymMatrix& m);

/// Gaussian elimination with partial pivoting (LAPACK dgesv). The matrix is
/// consumed. Throws SolverError on singular systems.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

/// Banded Cholesky factorization of an SPD matrix, reusable across many
/// right-hand sides (LAPACK dpbtrf/dpbtrs).
class BandCholesky {
public:
  explicit BandCholesky(const SparseSymMatrix& a);

  std::vector<double> solve(const std::vector<double>& b) const;
  int dim() const { return n_; }
  int bandwidth() const { return kd_; }

private:
  int n_ = 0;
  int kd_ = 0;
  std::vector<double> ab_; // LAPACK lower band storage, column-major
};

/// General banded system assembled entry-wise and solved once with
/// partial-pivoted LU (LAPACK dgbsv).
class BandSystem {
public:
  BandSystem(int n, int kl, int ku);

  void add(int i, int j, double v);

  /// Solves in place; the factorization overwrites the stored bands.
  /// Throws SolverError if the matrix is singular.
  std::vector<double> solve(std::vector<double> rhs);

private:
  int n_;
  int kl_;
  int ku_;
  int ldab_;
  std::vector<double> ab_;
};

} // namespace ectrl
