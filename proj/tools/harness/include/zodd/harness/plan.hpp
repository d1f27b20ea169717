#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>

#include "zodd/planner.hpp"

namespace zodd::harness {

struct PlanRequest {
  EstimatorKind kind = EstimatorKind::sphere;
  Regime regime = Regime::grad_lipschitz;
  double epsilon = 0.1;
  std::size_t dimension = 1;
  double sigma = 1.0;
  double M = 1.0;
  std::optional<double> H;
  PlannerConstants constants;
};

/// Prints "key: value" lines for the plan, including the complexity order and
/// total sample count (T + 1) * cost.
void print_plan(std::ostream& out, const PlanRequest& request, const ParameterPlan& plan);

/// `zodd plan`: 0 on success, 2 on invalid arguments.
int cmd_plan(const PlanRequest& request);

}  // namespace zodd::harness
