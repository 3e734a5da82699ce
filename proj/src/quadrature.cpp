#include "ectrl/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ectrl {

QuadratureRule QuadratureRule::degree5() {
  QuadratureRule rule;
  rule.degree = 5;

  const double s15 = std::sqrt(15.0);
  const double b1 = (6.0 + s15) / 21.0; // pairs with the smaller third coordinate
  const double a1 = 1.0 - 2.0 * b1;
  const double w1 = (155.0 + s15) / 1200.0;
  const double b2 = (6.0 - s15) / 21.0;
  const double a2 = 1.0 - 2.0 * b2;
  const double w2 = (155.0 - s15) / 1200.0;

  rule.points = {
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
      {a1, b1, b1},
      {b1, a1, b1},
      {b1, b1, a1},
      {a2, b2, b2},
      {b2, a2, b2},
      {b2, b2, a2},
  };
  rule.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
  return rule;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  }
  nodes.resize(n);
  weights.resize(n);

  // Newton iteration on P_n over [-1, 1], then map to [0, 1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        break;
      }
    }
    nodes[i] = 0.5 * (1.0 + x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule QuadratureRule::gauss_duffy(int points_1d) {
  std::vector<double> xs;
  std::vector<double> ws;
  gauss_legendre_01(points_1d, xs, ws);

  QuadratureRule rule;
  rule.degree = 2 * points_1d - 2;
  rule.points.reserve(static_cast<std::size_t>(points_1d) * points_1d);
  rule.weights.reserve(static_cast<std::size_t>(points_1d) * points_1d);

  // x = xi, y = eta * (1 - xi); the Jacobian (1 - xi) absorbs the collapse.
  for (int i = 0; i < points_1d; ++i) {
    for (int j = 0; j < points_1d; ++j) {
      const double x = xs[i];
      const double y = xs[j] * (1.0 - xs[i]);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(2.0 * ws[i] * ws[j] * (1.0 - xs[i]));
    }
  }
  return rule;
}

QuadratureRule QuadratureRule::refined(int subdivisions) const {
  if (subdivisions < 1) {
    throw std::invalid_argument("QuadratureRule::refined: subdivisions must be >= 1");
  }
  if (subdivisions == 1) {
    return *this;
  }

  const int k = subdivisions;
  QuadratureRule rule;
  rule.degree = degree;
  rule.points.reserve(points.size() * k * k);
  rule.weights.reserve(points.size() * k * k);

  const double inv = 1.0 / k;
  const double wscale = 1.0 / (k * k);

  auto emit = [&](const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                  const std::array<double, 2>& p2) {
    for (std::size_t q = 0; q < points.size(); ++q) {
      const auto& lam = points[q];
      const double x = lam[0] * p0[0] + lam[1] * p1[0] + lam[2] * p2[0];
      const double y = lam[0] * p0[1] + lam[1] * p1[1] + lam[2] * p2[1];
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(weights[q] * wscale);
    }
  };

  // Reference triangle split into k^2 congruent subtriangles.
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i + j < k; ++i) {
      const std::array<double, 2> a{i * inv, j * inv};
      const std::array<double, 2> b{(i + 1) * inv, j * inv};
      const std::array<double, 2> c{i * inv, (j + 1) * inv};
      emit(a, b, c);
      if (i + j < k - 1) {
        const std::array<double, 2> d{(i + 1) * inv, (j + 1) * inv};
        emit(b, d, c);
      }
    }
  }
  return rule;
}

} // namespace ectrl
