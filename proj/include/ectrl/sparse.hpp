#pragma once

#include <vector>

#include "ectrl/types.hpp"

namespace ectrl {

/// Sparse symmetric matrix in compressed row storage. Both triangles are
/// stored so that row traversal and matrix-vector products stay simple;
/// symmetry holds entry-wise by construction.
struct SparseSymMatrix {
  int dim = 0;
  std::vector<int> row_ptr; // size dim + 1
  std::vector<int> cols;
  std::vector<double> vals;

  NodalVector apply(const NodalVector& x) const;
  void apply(const double* x, double* y) const;

  /// Entry (i, j), zero when the position is not stored.
  double at(int i, int j) const;

  std::vector<double> diagonal() const;

  /// A + s * B for matrices with arbitrary (merged) patterns.
  static SparseSymMatrix add_scaled(const SparseSymMatrix& a, double s,
                                    const SparseSymMatrix& b);
};

/// Rectangular sparse matrix in compressed row storage (rows: fine nodes,
/// columns: coarse elements for the mixed mass matrix).
struct RectSparseMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> cols;
  std::vector<double> vals;

  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> apply_transpose(const std::vector<double>& y) const;
  double at(int i, int j) const;
};

/// Accumulates (i, j, value) contributions and compresses duplicates.
class TripletBuilder {
public:
  TripletBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add(int i, int j, double v) { entries_.push_back({i, j, v}); }

  SparseSymMatrix build_symmetric() const;
  RectSparseMatrix build_rect() const;

private:
  struct Entry {
    int i;
    int j;
    double v;
  };

  int rows_;
  int cols_;
  std::vector<Entry> entries_;
};

} // namespace ectrl
