#include <benchmark/benchmark.h>

#include "zodd/estimators.hpp"
#include "zodd/quadratic_env.hpp"

namespace {

using namespace zodd;

void run_estimator(benchmark::State& state, EstimatorKind kind) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto N = static_cast<std::size_t>(state.range(1));
  const QuadraticEnv env = make_quadratic_env({.dimension = d, .sigma = 1.0, .seed = 1});
  EnvironmentOracle oracle(env);
  EstimatorConfig cfg;
  cfg.kind = kind;
  cfg.mu = 0.1;
  cfg.N = N;
  const Point x = Point::Ones(static_cast<Eigen::Index>(d));
  const RngStream root(5, 6);
  std::uint64_t tag = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_gradient(x, cfg, oracle, root.child(tag++)).g);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(cfg.samples_per_estimate(d)));
}

void BM_Coordinate(benchmark::State& state) { run_estimator(state, EstimatorKind::coordinate); }
void BM_Sphere(benchmark::State& state) { run_estimator(state, EstimatorKind::sphere); }
void BM_Gaussian(benchmark::State& state) { run_estimator(state, EstimatorKind::gaussian); }
void BM_OnePoint(benchmark::State& state) { run_estimator(state, EstimatorKind::one_point); }

BENCHMARK(BM_Coordinate)->Args({10, 1})->Args({100, 1});
BENCHMARK(BM_Sphere)->Args({10, 1})->Args({10, 100})->Args({100, 10});
BENCHMARK(BM_Gaussian)->Args({10, 1})->Args({10, 100})->Args({100, 10});
BENCHMARK(BM_OnePoint)->Args({10, 1})->Args({10, 100});

}  // namespace
