#include <benchmark/benchmark.h>

#include "contagion/clearing.hpp"
#include "contagion/cycles.hpp"
#include "contagion/generators.hpp"

using namespace contagion;

namespace {

FinancialNetwork random_net(std::size_t n, std::uint64_t seed) {
  gen::Random r;
  r.n = n;
  r.density_num = 1;
  r.density_den = 3;
  r.scale = 4;
  r.p_hi = 8;
  r.seed = seed;
  return generate(r, CostSpec::canonical(make_rational(1, 2), 0));
}

}  // namespace

static void BM_WorstEquilibrium(benchmark::State& state) {
  auto net = random_net(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(worst_equilibrium(net));
}
BENCHMARK(BM_WorstEquilibrium)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMicrosecond);

static void BM_BestEquilibrium(benchmark::State& state) {
  auto net = random_net(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(best_equilibrium(net));
}
BENCHMARK(BM_BestEquilibrium)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMicrosecond);

static void BM_Enumerate(benchmark::State& state) {
  auto net = generate(gen::Wheel{static_cast<std::size_t>(state.range(0)), 1, 0},
                      CostSpec::canonical(make_rational(1, 2), 0));
  EnumerationOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_equilibria(net, opts));
}
BENCHMARK(BM_Enumerate)->ArgsProduct({{8, 12, 16}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SimpleCycles(benchmark::State& state) {
  auto net = random_net(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(simple_cycles(net, 100000));
    } catch (const CycleCapExceeded&) {
      state.SkipWithError("cycle cap exceeded");
      break;
    }
  }
}
BENCHMARK(BM_SimpleCycles)->DenseRange(6, 12, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
