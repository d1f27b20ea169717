#include "zodd/descent.hpp"

#include <cmath>
#include <random>
#include <string>

namespace zodd {
namespace {

constexpr std::uint64_t kStepTag = 0x57E9;
constexpr std::uint64_t kSelectTag = 0x5E1;
constexpr double kDivergenceNorm = 1e9;

bool diverged(const Point& x) { return !x.allFinite() || x.norm() > kDivergenceNorm; }

}  // namespace

DivergenceError::DivergenceError(std::size_t step, RunTrace trace)
    : Error("descent diverged at step " + std::to_string(step)),
      step_(step),
      trace_(std::move(trace)) {}

RngStream selection_stream(const RngStream& rng) { return rng.child(kSelectTag); }

std::size_t select_uniform_index(std::size_t count, const RngStream& rng) {
  if (count == 0) throw ArgumentError("cannot select from an empty set");
  RngEngine engine = rng.engine();
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  return pick(engine);
}

RunResult run_descent(const Point& x0, const ParameterPlan& plan, SampleOracle& oracle,
                      const RngStream& rng, const RunOptions& options) {
  plan.validate();
  require_point(x0, oracle.dimension());
  if (options.thinning == 0) throw ArgumentError("thinning factor must be at least 1");
  const Environment* env = options.analytic;
  if (env && (!env->has_exact_objective() || !env->has_gradient())) {
    throw UnsupportedEnvironment("diagnostics need an environment with exact F and grad F");
  }

  const EstimatorConfig cfg = plan.estimator();
  const std::size_t selected = select_uniform_index(plan.T + 1, selection_stream(rng));
  const RngStream steps = rng.child(kStepTag);

  RunResult result;
  RunTrace& trace = result.trace;
  trace.selected = selected;
  trace.samples_cumulative.reserve(plan.T + 1);
  if (env) trace.diagnostics.reserve(plan.T + 1);

  const std::uint64_t start = oracle.budget().consumed();
  Point x = x0;
  for (std::size_t t = 0; t <= plan.T; ++t) {
    if (t == selected) result.x_bar = x;
    GradientEstimate est = estimate_gradient(x, cfg, oracle, steps.child(t));
    trace.samples_cumulative.push_back(oracle.budget().consumed() - start);
    if (env) {
      const Vector grad = env->gradient(x);
      trace.diagnostics.push_back(
          {grad.squaredNorm(), (grad - est.g).squaredNorm(), env->objective(x)});
    }
    Point next = x - plan.eta * est.g;
    if (t % options.thinning == 0) {
      trace.iterates.push_back(x);
      trace.iterate_index.push_back(t);
      trace.estimates.push_back(std::move(est));
    }
    trace.steps = t + 1;
    if (diverged(next)) throw DivergenceError(t + 1, std::move(trace));
    x = std::move(next);
  }
  return result;
}

DescentLemmaCheck check_descent_lemma(const RunTrace& trace, double eta, double f_star,
                                      double relative_tolerance) {
  if (trace.diagnostics.empty()) {
    throw ArgumentError("descent check needs a trace with diagnostics");
  }
  if (!(eta > 0.0)) throw ArgumentError("eta must be positive");
  const double count = static_cast<double>(trace.diagnostics.size());
  double grad_sum = 0.0;
  double error_sum = 0.0;
  for (const auto& step : trace.diagnostics) {
    grad_sum += step.grad_norm_sq;
    error_sum += step.error_norm_sq;
  }
  DescentLemmaCheck out;
  out.lhs = grad_sum / count;
  out.rhs = 4.0 * (trace.diagnostics.front().objective - f_star) / (eta * count) +
            3.0 * error_sum / count;
  out.holds = out.lhs <= out.rhs * (1.0 + relative_tolerance) + 1e-300;
  return out;
}

}  // namespace zodd
