#include <benchmark/benchmark.h>

#include "zodd/pricing_env.hpp"
#include "zodd/strategic_env.hpp"
#include "zodd/synthetic.hpp"

namespace {

using namespace zodd;

void BM_PricingDraw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PriceVectors pv = make_synthetic_prices(1, n);
  const PricingEnv env(pv.theta, pv.rho, 120);
  const Point x = Point::Constant(static_cast<Eigen::Index>(n), 0.5);
  RngEngine rng(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(env.draw(x, rng));
}
BENCHMARK(BM_PricingDraw)->Arg(10)->Arg(30);

void BM_PricingExactObjective(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PriceVectors pv = make_synthetic_prices(1, n);
  const PricingEnv env(pv.theta, pv.rho, 120);
  const Point x = Point::Constant(static_cast<Eigen::Index>(n), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(env.objective(x));
}
BENCHMARK(BM_PricingExactObjective)->Arg(10)->Arg(30);

void BM_StrategicDraw(benchmark::State& state) {
  const StrategicEnv env(make_synthetic_population(4, 2000));
  Point x = Point::Constant(12, 0.3);
  x[11] = -0.5;
  RngEngine rng(5, 6);
  for (auto _ : state) benchmark::DoNotOptimize(env.draw(x, rng));
}
BENCHMARK(BM_StrategicDraw);

void BM_BestResponse(benchmark::State& state) {
  Point x = Point::Constant(12, 0.3);
  x[11] = -1.0;
  const Vector xi = Vector::Constant(11, -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(best_response(x, xi));
}
BENCHMARK(BM_BestResponse);

}  // namespace
