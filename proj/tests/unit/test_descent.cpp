#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "zodd/descent.hpp"
#include "zodd/errors.hpp"
#include "zodd/quadratic_env.hpp"

namespace {

using namespace zodd;

ParameterPlan plan_for(EstimatorKind kind, double eta, std::size_t T, double mu = 0.1,
                       std::size_t N = 1, std::size_t m = 1) {
  ParameterPlan plan;
  plan.kind = kind;
  plan.eta = eta;
  plan.T = T;
  plan.mu = mu;
  plan.N = N;
  plan.m = m;
  return plan;
}

TEST(Descent, ExactGradientContracts) {
  constexpr std::size_t d = 5;
  const QuadraticEnv env(Matrix::Identity(d, d), Vector::Zero(d), 0.0);
  EnvironmentOracle oracle(env);
  auto plan = plan_for(EstimatorKind::coordinate, 0.25, 200);
  plan.M = 1.0;
  const auto result = run_descent(Point::Ones(d), plan, oracle, RngStream(1, 0));
  const auto& it = result.trace.iterates;
  ASSERT_EQ(it.size(), 201u);
  for (std::size_t t = 0; t < it.size(); ++t) {
    EXPECT_LE(it[t].norm(), std::pow(0.75, static_cast<double>(t)) * std::sqrt(5.0) + 1e-9);
  }
  EXPECT_LE(it.back().norm(), std::pow(0.75, 200.0) * std::sqrt(5.0) + 1e-9);
  EXPECT_EQ(result.trace.samples_cumulative.back(), 201u * 2 * d);
}

TEST(Descent, ZeroOracleKeepsStart) {
  FunctionOracle oracle(3, [](const Point&, RngEngine&) { return 0.0; });
  const Point x0 = (Point(3) << 1.0, -2.0, 3.0).finished();
  for (std::size_t T : {1u, 10u, 500u}) {
    const auto result =
        run_descent(x0, plan_for(EstimatorKind::sphere, 0.25, T), oracle, RngStream(T, 0));
    EXPECT_EQ(result.x_bar, x0);
  }
}

TEST(Descent, TraceShapeAndMonotoneSamples) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 4, .sigma = 1.0, .seed = 5});
  EnvironmentOracle oracle(env);
  RunOptions opt;
  opt.analytic = &env;
  const auto result = run_descent(Point::Ones(4), plan_for(EstimatorKind::gaussian, 0.25, 30, 0.1, 2),
                                  oracle, RngStream(2, 0), opt);
  const auto& tr = result.trace;
  EXPECT_EQ(tr.iterates.size(), 31u);
  EXPECT_EQ(tr.estimates.size(), 31u);
  EXPECT_EQ(tr.diagnostics.size(), 31u);
  EXPECT_EQ(tr.steps, 31u);
  for (std::size_t i = 1; i < tr.samples_cumulative.size(); ++i) {
    EXPECT_EQ(tr.samples_cumulative[i] - tr.samples_cumulative[i - 1], 4u);
  }
  EXPECT_EQ(result.x_bar, tr.iterates[tr.selected]);
}

TEST(Descent, ThinningKeepsEveryKth) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 3, .sigma = 1.0, .seed = 5});
  EnvironmentOracle oracle(env);
  RunOptions opt;
  opt.thinning = 10;
  const auto result =
      run_descent(Point::Ones(3), plan_for(EstimatorKind::sphere, 0.25, 99), oracle, RngStream(3, 0), opt);
  EXPECT_EQ(result.trace.iterates.size(), 10u);
  EXPECT_EQ(result.trace.iterate_index[3], 30u);
  EXPECT_EQ(result.trace.samples_cumulative.size(), 100u);
}

TEST(Descent, DeterministicForSeed) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 3, .sigma = 1.0, .seed = 5});
  EnvironmentOracle o1(env);
  EnvironmentOracle o2(env);
  const auto plan = plan_for(EstimatorKind::sphere, 0.25, 50);
  const auto a = run_descent(Point::Ones(3), plan, o1, RngStream(8, 8));
  const auto b = run_descent(Point::Ones(3), plan, o2, RngStream(8, 8));
  EXPECT_EQ(a.x_bar, b.x_bar);
  EXPECT_EQ(a.trace.selected, b.trace.selected);
  EXPECT_EQ(a.trace.iterates.back(), b.trace.iterates.back());
}

TEST(Selection, UniformChiSquare) {
  constexpr std::size_t k = 10;
  constexpr int n = 20000;
  std::vector<int> counts(k, 0);
  const RngStream rng(77, 0);
  for (int i = 0; i < n; ++i) ++counts[select_uniform_index(k, rng.child(i))];
  double chi2 = 0.0;
  const double expected = static_cast<double>(n) / k;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 27.88);  // 0.999 quantile, 9 degrees of freedom
  EXPECT_THROW(select_uniform_index(0, rng), ArgumentError);
}

TEST(Descent, DivergenceCarriesTrace) {
  FunctionOracle oracle(2, [](const Point& x, RngEngine&) { return -1e6 * x.squaredNorm(); });
  try {
    (void)run_descent(Point::Ones(2), plan_for(EstimatorKind::coordinate, 0.25, 1000), oracle,
                      RngStream(1, 0));
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.step(), 0u);
    EXPECT_LT(e.step(), 10u);
    EXPECT_EQ(e.trace().iterates.size(), e.step());
  }
}

TEST(Descent, BudgetErrorPropagates) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 3, .sigma = 1.0, .seed = 5});
  EnvironmentOracle oracle(env, 50);
  EXPECT_THROW(run_descent(Point::Ones(3), plan_for(EstimatorKind::sphere, 0.25, 100), oracle,
                           RngStream(1, 0)),
               BudgetError);
}

TEST(Descent, RejectsOversizedStep) {
  FunctionOracle oracle(2, [](const Point&, RngEngine&) { return 0.0; });
  auto plan = plan_for(EstimatorKind::sphere, 0.5, 10);
  plan.M = 1.0;
  EXPECT_THROW(run_descent(Point::Zero(2), plan, oracle, RngStream(1, 0)), ArgumentError);
}

TEST(DescentLemma, HoldsOnNoisyQuadraticRuns) {
  const QuadraticEnv env = make_quadratic_env({.dimension = 5, .sigma = 1.0, .seed = 7});
  RunOptions opt;
  opt.analytic = &env;
  const double eta = 1.0 / (4.0 * env.smoothness());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (auto kind : {EstimatorKind::coordinate, EstimatorKind::sphere, EstimatorKind::gaussian}) {
      EnvironmentOracle oracle(env);
      auto plan = plan_for(kind, eta, 100, 0.1, 5);
      plan.M = env.smoothness();
      const auto result = run_descent(Point::Constant(5, 3.0), plan, oracle, RngStream(seed, 1), opt);
      const auto check = check_descent_lemma(result.trace, eta, *env.minimum_value());
      EXPECT_TRUE(check.holds) << check.lhs << " > " << check.rhs;
    }
  }
}

TEST(DescentLemma, NeedsDiagnostics) {
  RunTrace empty;
  EXPECT_THROW(check_descent_lemma(empty, 0.25, 0.0), ArgumentError);
}

}  // namespace
