#include "ectrl/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ectrl {

namespace {

template <typename Matrix>
void compress(int rows, int cols,
              std::vector<std::tuple<int, int, double>>&& entries, Matrix& out) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });

  out.row_ptr.assign(rows + 1, 0);
  out.cols.clear();
  out.vals.clear();
  out.cols.reserve(entries.size());
  out.vals.reserve(entries.size());

  for (std::size_t k = 0; k < entries.size();) {
    const int i = std::get<0>(entries[k]);
    const int j = std::get<1>(entries[k]);
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      throw std::invalid_argument("sparse compress: index out of range");
    }
    double v = 0.0;
    while (k < entries.size() && std::get<0>(entries[k]) == i &&
           std::get<1>(entries[k]) == j) {
      v += std::get<2>(entries[k]);
      ++k;
    }
    out.cols.push_back(j);
    out.vals.push_back(v);
    ++out.row_ptr[i + 1];
  }
  for (int i = 0; i < rows; ++i) {
    out.row_ptr[i + 1] += out.row_ptr[i];
  }
}

template <typename Matrix>
double entry_at(const Matrix& m, int i, int j) {
  for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
    if (m.cols[k] == j) {
      return m.vals[k];
    }
  }
  return 0.0;
}

} // namespace

NodalVector SparseSymMatrix::apply(const NodalVector& x) const {
  NodalVector y(dim, 0.0);
  apply(x.data(), y.data());
  return y;
}

void SparseSymMatrix::apply(const double* x, double* y) const {
  for (int i = 0; i < dim; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      s += vals[k] * x[cols[k]];
    }
    y[i] = s;
  }
}

double SparseSymMatrix::at(int i, int j) const { return entry_at(*this, i, j); }

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    d[i] = at(i, i);
  }
  return d;
}

SparseSymMatrix SparseSymMatrix::add_scaled(const SparseSymMatrix& a, double s,
                                            const SparseSymMatrix& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("add_scaled: dimension mismatch");
  }
  TripletBuilder builder(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i) {
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      builder.add(i, a.cols[k], a.vals[k]);
    }
    for (int k = b.row_ptr[i]; k < b.row_ptr[i + 1]; ++k) {
      builder.add(i, b.cols[k], s * b.vals[k]);
    }
  }
  return builder.build_symmetric();
}

std::vector<double> RectSparseMatrix::apply(const std::vector<double>& x) const {
  assert(static_cast<int>(x.size()) == n_cols);
  std::vector<double> y(n_rows, 0.0);
  for (int i = 0; i < n_rows; ++i) {
    double s = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      s += vals[k] * x[cols[k]];
    }
    y[i] = s;
  }
  return y;
}

std::vector<double> RectSparseMatrix::apply_transpose(const std::vector<double>& y) const {
  assert(static_cast<int>(y.size()) == n_rows);
  std::vector<double> x(n_cols, 0.0);
  for (int i = 0; i < n_rows; ++i) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      x[cols[k]] += vals[k] * y[i];
    }
  }
  return x;
}

double RectSparseMatrix::at(int i, int j) const { return entry_at(*this, i, j); }

SparseSymMatrix TripletBuilder::build_symmetric() const {
  if (rows_ != cols_) {
    throw std::invalid_argument("build_symmetric: matrix must be square");
  }
  std::vector<std::tuple<int, int, double>> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) {
    entries.emplace_back(e.i, e.j, e.v);
  }
  SparseSymMatrix m;
  m.dim = rows_;
  compress(rows_, cols_, std::move(entries), m);
  return m;
}

RectSparseMatrix TripletBuilder::build_rect() const {
  std::vector<std::tuple<int, int, double>> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) {
    entries.emplace_back(e.i, e.j, e.v);
  }
  RectSparseMatrix m;
  m.n_rows = rows_;
  m.n_cols = cols_;
  compress(rows_, cols_, std::move(entries), m);
  return m;
}

} // namespace ectrl
