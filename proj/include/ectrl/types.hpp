#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ectrl {

/// Coefficient vector over mesh nodes (full node set or interior-only,
/// as stated per operation).
using NodalVector = std::vector<double>;

/// One value per element of a piecewise-constant space.
using ElementVector = std::vector<double>;

using ScalarField = std::function<double(double, double)>;
using GradientField = std::function<std::array<double, 2>(double, double)>;

/// Thrown when an iterative solver does not reach its tolerance.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), residual(achieved_residual) {}

  double residual;
};

/// Thrown when element-level integration encounters invalid geometry.
class AssemblyError : public std::runtime_error {
public:
  explicit AssemblyError(const std::string& what) : std::runtime_error(what) {}
};

/// Outcome of an active-set solve.
struct SolveReport {
  bool converged = false;
  int iterations = 0; // number of linear solves, including the initial one
  std::vector<std::size_t> active_minus_sizes;
  std::vector<std::size_t> active_plus_sizes;
  double feasibility_violation = 0.0;
  double complementarity_residual = 0.0;
  double tol = 0.0;
  double c = 0.0;
  double inner_rel_tol = 0.0;
};

} // namespace ectrl
