#include "zodd/harness/plan.hpp"

#include <iostream>

#include "zodd/errors.hpp"
#include "zodd/harness/csv.hpp"

namespace zodd::harness {

void print_plan(std::ostream& out, const PlanRequest& request, const ParameterPlan& plan) {
  const auto per_estimate = plan.estimator().samples_per_estimate(request.dimension);
  out << "kind: " << to_string(plan.kind) << '\n'
      << "regime: " << to_string(plan.regime) << '\n'
      << "epsilon: " << format_number(request.epsilon) << '\n'
      << "dimension: " << request.dimension << '\n'
      << "mu: " << format_number(plan.mu) << '\n'
      << "N: " << plan.N << '\n'
      << "m: " << plan.m << '\n'
      << "eta: " << format_number(plan.eta) << '\n'
      << "T: " << plan.T << '\n'
      << "samples_per_estimate: " << per_estimate << '\n'
      << "total_samples: " << (plan.T + 1) * per_estimate << '\n'
      << "complexity: " << complexity_tag(plan.kind, plan.regime) << '\n';
}

int cmd_plan(const PlanRequest& request) {
  try {
    const ParameterPlan plan =
        plan_parameters(request.kind, request.regime, request.epsilon, request.dimension,
                        request.sigma, request.M, request.H, request.constants);
    print_plan(std::cout, request, plan);
    return 0;
  } catch (const Error& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace zodd::harness
