#pragma once

#include <array>
#include <vector>

namespace ectrl {

/// Quadrature rule on the reference triangle, stored in barycentric
/// coordinates with weights relative to the element area (summing to 1).
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }

  /// Classic 7-point rule, exact for polynomials up to degree 5.
  static QuadratureRule degree5();

  /// Tensor Gauss rule collapsed onto the triangle; exact up to degree
  /// 2 * points_1d - 2. Used as a high-order reference rule.
  static QuadratureRule gauss_duffy(int points_1d);

  /// Same rule replicated on k^2 congruent subtriangles. Does not raise the
  /// polynomial exactness but resolves steep or piecewise-defined integrands.
  QuadratureRule refined(int subdivisions) const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace ectrl
