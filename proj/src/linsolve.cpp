#include "ectrl/linsolve.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

extern "C" {
void dgesv_(const int* n, const int* nrhs, double* a, const int* lda, int* ipiv,
            double* b, const int* ldb, int* info);
void dpbtrf_(const char* uplo, const int* n, const int* kd, double* ab,
             const int* ldab, int* info);
void dpbtrs_(const char* uplo, const int* n, const int* kd, const int* nrhs,
             const double* ab, const int* ldab, double* b, const int* ldb, int* info);
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const double* ab, const int* ldab, const int* ipiv,
             double* b, const int* ldb, int* info);
}

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

PcgResult solve_spd(const SparseSymMatrix& a, const NodalVector& b, double rel_tol,
                    int max_iter, const PcgMonitor& monitor) {
  const int n = a.dim;
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("solve_spd: dimension mismatch");
  }
  if (max_iter < 0) {
    max_iter = 10 * n;
  }

  PcgResult result;
  result.x.assign(n, 0.0);

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    return result;
  }

  std::vector<double> inv_diag(n);
  {
    const auto d = a.diagonal();
    for (int i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) {
        throw std::invalid_argument("solve_spd: non-positive diagonal entry");
      }
      inv_diag[i] = 1.0 / d[i];
    }
  }

  std::vector<double> r = b;
  std::vector<double> z(n);
  std::vector<double> p(n);
  std::vector<double> q(n);
  for (int i = 0; i < n; ++i) {
    z[i] = inv_diag[i] * r[i];
  }
  p = z;
  double rz = dot(r, z);

  double rel = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    a.apply(p.data(), q.data());
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      throw SolverError("solve_spd: matrix is not positive definite", rel);
    }
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    if (monitor) {
      monitor(it, result.x);
    }
    rel = norm2(r) / bnorm;
    if (rel <= rel_tol) {
      result.iterations = it;
      result.relative_residual = rel;
      return result;
    }
    for (int i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
    }
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    for (int i = 0; i < n; ++i) {
      p[i] = z[i] + beta * p[i];
    }
    rz = rz_next;
  }
  throw SolverError("solve_spd: no convergence within max_iter (relative residual " +
                        std::to_string(rel) + ")",
                    rel);
}

NodalVector apply_inverse(const SparseSymMatrix& a, const RectSparseMatrix& b,
                          const std::vector<double>& y, double rel_tol) {
  if (b.n_rows != a.dim) {
    throw std::invalid_argument("apply_inverse: dimension mismatch");
  }
  return solve_spd(a, b.apply(y), rel_tol).x;
}

DenseMatrix to_dense(const SparseSymMatrix& m) {
  DenseMatrix d(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i) {
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      d(i, m.cols[k]) = m.vals[k];
    }
  }
  return d;
}

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
  if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows) {
    throw std::invalid_argument("dense_solve: dimension mismatch");
  }
  int n = a.rows;
  int nrhs = 1;
  int info = 0;
  std::vector<int> ipiv(n);
  dgesv_(&n, &nrhs, a.a.data(), &n, ipiv.data(), b.data(), &n, &info);
  if (info != 0) {
    throw SolverError("dense_solve: singular matrix (dgesv info " + std::to_string(info) + ")",
                      0.0);
  }
  return b;
}

BandCholesky::BandCholesky(const SparseSymMatrix& a) : n_(a.dim) {
  for (int i = 0; i < n_; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      kd_ = std::max(kd_, std::abs(a.cols[k] - i));
    }
  }
  const int ldab = kd_ + 1;
  ab_.assign(static_cast<std::size_t>(ldab) * n_, 0.0);
  // Lower band storage: AB(i - j, j) = A(i, j) for j <= i <= min(n-1, j + kd).
  for (int i = 0; i < n_; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const int j = a.cols[k];
      if (j <= i) {
        ab_[static_cast<std::size_t>(j) * ldab + (i - j)] = a.vals[k];
      }
    }
  }
  int info = 0;
  const char uplo = 'L';
  dpbtrf_(&uplo, &n_, &kd_, ab_.data(), &ldab, &info);
  if (info != 0) {
    throw SolverError("BandCholesky: factorization failed (dpbtrf info " +
                          std::to_string(info) + ")",
                      0.0);
  }
}

std::vector<double> BandCholesky::solve(const std::vector<double>& b) const {
  if (static_cast<int>(b.size()) != n_) {
    throw std::invalid_argument("BandCholesky::solve: dimension mismatch");
  }
  std::vector<double> x = b;
  int nrhs = 1;
  int ldab = kd_ + 1;
  int info = 0;
  const char uplo = 'L';
  dpbtrs_(&uplo, &n_, &kd_, &nrhs, ab_.data(), &ldab, x.data(), &n_, &info);
  if (info != 0) {
    throw SolverError("BandCholesky::solve failed (dpbtrs info " + std::to_string(info) + ")",
                      0.0);
  }
  return x;
}

BandSystem::BandSystem(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(2 * kl + ku + 1) * n, 0.0) {}

void BandSystem::add(int i, int j, double v) {
  if (j - i > ku_ || i - j > kl_) {
    throw std::invalid_argument("BandSystem::add: entry outside band");
  }
  ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v;
}

std::vector<double> BandSystem::solve(std::vector<double> rhs) {
  if (static_cast<int>(rhs.size()) != n_) {
    throw std::invalid_argument("BandSystem::solve: dimension mismatch");
  }
  std::vector<int> ipiv(n_);
  int info = 0;
  dgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv.data(), &info);
  if (info != 0) {
    throw SolverError("BandSystem::solve: singular system (dgbtrf info " +
                          std::to_string(info) + ")",
                      0.0);
  }
  const char trans = 'N';
  int nrhs = 1;
  dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv.data(), rhs.data(), &n_,
          &info);
  if (info != 0) {
    throw SolverError("BandSystem::solve failed (dgbtrs info " + std::to_string(info) + ")",
                      0.0);
  }
  return rhs;
}

} // namespace ectrl
