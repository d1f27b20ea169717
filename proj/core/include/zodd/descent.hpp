#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zodd/environment.hpp"
#include "zodd/errors.hpp"
#include "zodd/estimators.hpp"
#include "zodd/oracle.hpp"
#include "zodd/planner.hpp"
#include "zodd/rng.hpp"

namespace zodd {

struct RunOptions {
  /// Keep every k-th iterate and estimate (x_0 is always kept). Diagnostics
  /// are recorded for every step regardless.
  std::size_t thinning = 1;
  /// Source of F and grad F for diagnostics; must outlive the call.
  const Environment* analytic = nullptr;
};

/// Per-step ground truth, available when the environment is analytic.
struct StepDiagnostics {
  double grad_norm_sq = 0.0;   // ||grad F(x_t)||^2
  double error_norm_sq = 0.0;  // ||grad F(x_t) - g_t||^2
  double objective = 0.0;      // F(x_t)
};

struct RunTrace {
  std::vector<Point> iterates;             // stored x_t
  std::vector<std::size_t> iterate_index;  // t of each stored iterate
  std::vector<GradientEstimate> estimates;
  std::vector<std::uint64_t> samples_cumulative;  // one entry per step t = 0..T
  std::vector<StepDiagnostics> diagnostics;       // one entry per step, or empty
  std::size_t steps = 0;                          // completed steps
  std::size_t selected = 0;                       // index of the returned iterate
};

struct RunResult {
  Point x_bar;
  RunTrace trace;
};

/// The iterate norm exceeded 1e9 or became non-finite.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, RunTrace trace);
  std::size_t step() const noexcept { return step_; }
  const RunTrace& trace() const noexcept { return trace_; }

 private:
  std::size_t step_;
  RunTrace trace_;
};

/// Stochastic zeroth-order descent: for t = 0..T, g_t is the configured
/// estimate at x_t and x_{t+1} = x_t - eta g_t. Returns an iterate drawn
/// uniformly from x_0..x_T with a stream independent of the estimator calls.
/// Uses T + 1 estimates in total. Budget errors propagate unchanged.
RunResult run_descent(const Point& x0, const ParameterPlan& plan, SampleOracle& oracle,
                      const RngStream& rng, const RunOptions& options = {});

/// Uniform index in [0, count) derived from `rng`.
std::size_t select_uniform_index(std::size_t count, const RngStream& rng);

/// Stream run_descent uses to pick the output iterate.
RngStream selection_stream(const RngStream& rng);

struct DescentLemmaCheck {
  double lhs = 0.0;  // mean ||grad F(x_t)||^2
  double rhs = 0.0;  // 4 (F(x_0) - F*) / (eta (T+1)) + 3 mean ||grad F(x_t) - g_t||^2
  bool holds = false;
};

/// Evaluates the descent inequality from a trace with diagnostics.
/// `relative_tolerance` only absorbs floating-point rounding.
DescentLemmaCheck check_descent_lemma(const RunTrace& trace, double eta, double f_star,
                                      double relative_tolerance = 1e-9);

}  // namespace zodd
