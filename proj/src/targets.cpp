#include "ectrl/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ectrl {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// second derivative of the logistic function
double sigmoid_pp(double t) {
  const double s = sigmoid(t);
  return s * (1.0 - s) * (1.0 - 2.0 * s);
}

double hk(double s, double k) {
  return sigmoid(k * (s - 0.25)) - sigmoid(k * (s - 0.75));
}

double hk_prime(double s, double k) {
  auto sp = [](double t) {
    const double v = sigmoid(t);
    return v * (1.0 - v);
  };
  return k * (sp(k * (s - 0.25)) - sp(k * (s - 0.75)));
}

double hk_pp(double s, double k) {
  return k * k * (sigmoid_pp(k * (s - 0.25)) - sigmoid_pp(k * (s - 0.75)));
}

double u1(double x, double y) { return std::sin(M_PI * x) * std::sin(M_PI * y); }

double z1(double x, double y) { return 2.0 * M_PI * M_PI * u1(x, y); }

double u3(double x, double y) {
  return (x >= 0.25 && x <= 0.75 && y >= 0.25 && y <= 0.75) ? 1.0 : 0.0;
}

} // namespace

double TargetSpec::operator()(double x, double y) const { return eval_target(*this, x, y); }

std::string TargetSpec::name() const {
  switch (kind) {
    case TargetKind::u1:
      return "u1";
    case TargetKind::u2:
      return "u2";
    case TargetKind::u3:
      return "u3";
  }
  return "?";
}

TargetSpec make_target(TargetKind kind, double k) { return TargetSpec{kind, k}; }

TargetSpec target_from_string(const std::string& name, double k) {
  if (name == "u1") return make_target(TargetKind::u1, k);
  if (name == "u2") return make_target(TargetKind::u2, k);
  if (name == "u3") return make_target(TargetKind::u3, k);
  throw std::invalid_argument("unknown target '" + name + "' (expected u1, u2 or u3)");
}

double eval_target(const TargetSpec& spec, double x, double y) {
  switch (spec.kind) {
    case TargetKind::u1:
      return u1(x, y);
    case TargetKind::u2:
      return hk(x, spec.k) * hk(y, spec.k);
    case TargetKind::u3:
      return u3(x, y);
  }
  return 0.0;
}

double eval_exact_control(ControlKind kind, double x, double y, double k) {
  switch (kind) {
    case ControlKind::z1:
      return z1(x, y);
    case ControlKind::z2:
      return -(hk_pp(x, k) * hk(y, k) + hk(x, k) * hk_pp(y, k));
    case ControlKind::z3:
      throw std::invalid_argument("eval_exact_control: z3 exists only distributionally");
  }
  return 0.0;
}

bool has_analytic_control(TargetKind kind) { return kind != TargetKind::u3; }

GradientField target_gradient(TargetKind kind, double k) {
  switch (kind) {
    case TargetKind::u1:
      return [](double x, double y) {
        return std::array<double, 2>{M_PI * std::cos(M_PI * x) * std::sin(M_PI * y),
                                     M_PI * std::sin(M_PI * x) * std::cos(M_PI * y)};
      };
    case TargetKind::u2:
      return [k](double x, double y) {
        return std::array<double, 2>{hk_prime(x, k) * hk(y, k), hk(x, k) * hk_prime(y, k)};
      };
    case TargetKind::u3:
      throw std::invalid_argument("target_gradient: u3 has no L2 gradient");
  }
  return {};
}

ScalarField exact_control_field(TargetKind kind, double k) {
  switch (kind) {
    case TargetKind::u1:
      return z1;
    case TargetKind::u2:
      return [k](double x, double y) { return eval_exact_control(ControlKind::z2, x, y, k); };
    case TargetKind::u3:
      throw std::invalid_argument("exact_control_field: u3 has no analytic control");
  }
  return {};
}

ConstraintSpec no_constraints() { return {}; }

ConstraintSpec state_constraints(ScalarField lower, ScalarField upper, std::string name) {
  ConstraintSpec spec;
  spec.mode = ConstraintMode::state;
  spec.lower = std::move(lower);
  spec.upper = std::move(upper);
  spec.name = std::move(name);
  return spec;
}

ConstraintSpec control_constraints(ScalarField lower, ScalarField upper, std::string name) {
  ConstraintSpec spec;
  spec.mode = ConstraintMode::control;
  spec.lower = std::move(lower);
  spec.upper = std::move(upper);
  spec.name = std::move(name);
  return spec;
}

ConstraintSpec preset_constraints(const std::string& name, double k) {
  auto zero = [](double, double) { return 0.0; };
  auto z2f = [k](double x, double y) { return eval_exact_control(ControlKind::z2, x, y, k); };

  if (name == "none") {
    return no_constraints();
  }
  if (name == "g1") {
    return state_constraints(zero, [](double x, double y) { return 0.5 * u1(x, y); }, "g1");
  }
  if (name == "g2") {
    return state_constraints(
        zero, [k](double x, double y) { return 0.5 * hk(x, k) * hk(y, k); }, "g2");
  }
  if (name == "f1") {
    return control_constraints(zero, [](double x, double y) { return 0.5 * z1(x, y); }, "f1");
  }
  if (name == "f2") {
    return control_constraints(
        zero, [](double x, double y) { return std::min(z1(x, y), 10.0); }, "f2");
  }
  if (name == "f3") {
    return control_constraints(
        [z2f](double x, double y) { return std::max(std::min(z2f(x, y), 0.0), -500.0); },
        [z2f](double x, double y) { return std::min(std::max(z2f(x, y), 0.0), 500.0); }, "f3");
  }
  if (name == "f4") {
    return control_constraints(
        zero,
        [z2f](double x, double y) { return std::min(std::max(z2f(x, y), 0.0), 1000.0); },
        "f4");
  }
  if (name == "f5") {
    return control_constraints(
        zero,
        [z2f](double x, double y) { return 4.0 * std::min(std::max(z2f(x, y), 0.0), 250.0); },
        "f5");
  }
  throw std::invalid_argument("unknown constraint preset '" + name + "'");
}

} // namespace ectrl
