#include <benchmark/benchmark.h>

#include "zodd/directions.hpp"
#include "zodd/rng.hpp"

namespace {

void BM_PhiloxBlock(benchmark::State& state) {
  std::array<std::uint32_t, 4> ctr{0, 0, 0, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(zodd::philox4x32(ctr, {0x1234u, 0x5678u}));
    ++ctr[0];
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_EngineUniform(benchmark::State& state) {
  zodd::RngEngine engine(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(engine.uniform());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineUniform);

void BM_StreamChild(benchmark::State& state) {
  const zodd::RngStream root(1, 2);
  std::uint64_t tag = 0;
  for (auto _ : state) benchmark::DoNotOptimize(root.child(tag++));
}
BENCHMARK(BM_StreamChild);

void BM_SphereDirection(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const zodd::RngStream root(3, 4);
  std::uint64_t tag = 0;
  for (auto _ : state) benchmark::DoNotOptimize(zodd::draw_sphere(root.child(tag++), d));
}
BENCHMARK(BM_SphereDirection)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace
