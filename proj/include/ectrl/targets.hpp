#pragma once

#include <string>

#include "ectrl/types.hpp"

namespace ectrl {

enum class TargetKind { u1, u2, u3 };
enum class ControlKind { z1, z2, z3 };

/// Analytic target function on the unit square.
struct TargetSpec {
  TargetKind kind = TargetKind::u1;
  double k = 40.0; // steepness of the sigmoid target

  double operator()(double x, double y) const;
  std::string name() const;
};

TargetSpec make_target(TargetKind kind, double k = 40.0);
TargetSpec target_from_string(const std::string& name, double k = 40.0);

double eval_target(const TargetSpec& spec, double x, double y);

/// Exact control z = -laplace(target); analytic for u1 and u2 only.
/// Throws std::invalid_argument for z3 (distributional only).
double eval_exact_control(ControlKind kind, double x, double y, double k = 40.0);

/// Whether the target admits an analytic control / gradient.
bool has_analytic_control(TargetKind kind);

/// Gradient field of the target (u1 and u2); throws for u3.
GradientField target_gradient(TargetKind kind, double k = 40.0);

/// Exact control field matching the target, as a ScalarField.
ScalarField exact_control_field(TargetKind kind, double k = 40.0);

enum class ConstraintMode { none, state, control };

/// Tagged union of constraint configurations: none, pointwise state
/// barriers, or weak control bounds.
struct ConstraintSpec {
  ConstraintMode mode = ConstraintMode::none;
  ScalarField lower;
  ScalarField upper;
  std::string name = "none";
};

ConstraintSpec no_constraints();
ConstraintSpec state_constraints(ScalarField lower, ScalarField upper,
                                 std::string name = "state");
ConstraintSpec control_constraints(ScalarField lower, ScalarField upper,
                                   std::string name = "control");

/// Named presets: g1, g2 (state barriers), f1..f5 (control bounds).
/// Throws std::invalid_argument for unknown names.
ConstraintSpec preset_constraints(const std::string& name, double k = 40.0);

} // namespace ectrl
