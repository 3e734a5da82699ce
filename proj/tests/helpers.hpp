#pragma once

#include <cmath>
#include <random>

#include "ectrl/types.hpp"

namespace test_helpers {

inline ectrl::ScalarField random_trig_field(std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  const double a11 = dist(rng);
  const double a12 = dist(rng);
  const double a21 = dist(rng);
  const double a22 = dist(rng);
  return [=](double x, double y) {
    const double sx = std::sin(M_PI * x);
    const double sy = std::sin(M_PI * y);
    const double s2x = std::sin(2.0 * M_PI * x);
    const double s2y = std::sin(2.0 * M_PI * y);
    return a11 * sx * sy + a12 * sx * s2y + a21 * s2x * sy + a22 * s2x * s2y;
  };
}

inline double max_abs_diff(const ectrl::NodalVector& a, const ectrl::NodalVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

inline double max_abs(const ectrl::NodalVector& a) {
  double worst = 0.0;
  for (double v : a) {
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

} // namespace test_helpers
