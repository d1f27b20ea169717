#include <gtest/gtest.h>

#include <cmath>

#include "zodd/harness/config.hpp"
#include "zodd/harness/run.hpp"

namespace {

using namespace zodd;
using namespace zodd::harness;

ExperimentConfig quadratic_config(std::uint64_t budget) {
  return parse_config(R"(
environment: {kind: quadratic, dimension: 5, sigma: 1.0, seed: 3}
estimators:
  - {name: coordinate, kind: coordinate, mu: 0.1}
  - {name: sphere, kind: sphere, mu: 0.1, N: 5}
  - {name: gaussian, kind: gaussian, mu: 0.05, N: 5}
  - {name: one_point, kind: one_point, mu: 0.5, N: 1}
seeds: {start: 1, count: 3}
evaluation_draws: 200
trace_points: 20
budget: )" + std::to_string(budget) + "\n");
}

TEST(RunExperiment, BudgetAccountingMatchesContract) {
  const ExperimentConfig config = quadratic_config(1000);
  const BuiltEnvironment built = build_environment(config);
  const RunReport report = run_experiment(config, built);
  ASSERT_EQ(report.rows.size(), 12u);
  for (const ResultRow& row : report.rows) {
    EXPECT_LE(row.samples_used, config.budget);
    std::uint64_t cost = 0;
    for (const ResolvedMethod& m : report.methods) {
      if (m.name == row.method) cost = m.estimator.samples_per_estimate(5);
    }
    if (row.status == "ok") {
      EXPECT_EQ(row.samples_used, row.iterations * cost) << row.method;
      EXPECT_EQ(row.iterations, config.budget / cost);
      EXPECT_GE(row.obj_sd, 0.0);
      ASSERT_TRUE(row.grad_norm_sq);
    }
  }
}

TEST(RunExperiment, RowsOrderedAndThreadIndependent) {
  const ExperimentConfig config = quadratic_config(600);
  const BuiltEnvironment built = build_environment(config);
  const RunReport one = run_experiment(config, built, 1);
  const RunReport three = run_experiment(config, built, 3);
  ASSERT_EQ(one.rows.size(), three.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].method, three.rows[i].method);
    EXPECT_EQ(one.rows[i].seed, three.rows[i].seed);
    EXPECT_EQ(one.rows[i].status, three.rows[i].status);
    if (one.rows[i].status == "ok") EXPECT_EQ(one.rows[i].obj_mean, three.rows[i].obj_mean);
  }
  EXPECT_EQ(one.rows[0].method, "coordinate");
  EXPECT_EQ(one.rows[0].seed, 1u);
  EXPECT_EQ(one.rows.back().method, "one_point");
}

TEST(RunExperiment, TinyBudgetFlagsEveryRow) {
  const ExperimentConfig config = quadratic_config(3);
  const BuiltEnvironment built = build_environment(config);
  const RunReport report = run_experiment(config, built);
  for (const ResultRow& row : report.rows) {
    if (row.method == "one_point") continue;  // one draw per estimate fits
    EXPECT_EQ(row.status, "budget_error") << row.method;
    EXPECT_TRUE(std::isnan(row.obj_mean));
    EXPECT_FALSE(row.message.empty());
  }
}

TEST(RunExperiment, TraceIsMonotoneInSamples) {
  const ExperimentConfig config = quadratic_config(2000);
  const BuiltEnvironment built = build_environment(config);
  const RunReport report = run_experiment(config, built);
  ASSERT_FALSE(report.trace.empty());
  for (std::size_t i = 1; i < report.trace.size(); ++i) {
    const auto& a = report.trace[i - 1];
    const auto& b = report.trace[i];
    if (a.method == b.method && a.seed == b.seed) {
      EXPECT_LT(a.iteration, b.iteration);
      EXPECT_LT(a.cumulative_samples, b.cumulative_samples);
    }
  }
}

TEST(RunExperiment, PlannedMethodUsesPlannerStep) {
  const ExperimentConfig config = parse_config(R"(
environment: {kind: quadratic, dimension: 3, seed: 1}
estimators:
  - name: planned
    kind: sphere
    plan: {regime: grad, epsilon: 0.3}
seeds: [1]
budget: 100000
evaluation_draws: 10
)");
  const BuiltEnvironment built = build_environment(config);
  const RunReport report = run_experiment(config, built);
  ASSERT_EQ(report.methods.size(), 1u);
  EXPECT_EQ(report.methods[0].estimator.N, 1112u);  // ceil(9 / 0.3^4)
  EXPECT_NEAR(report.methods[0].step, 0.25, 1e-12);
}

}  // namespace
