#include <benchmark/benchmark.h>

#include "contagion/bailout.hpp"
#include "contagion/generators.hpp"
#include "contagion/structured.hpp"

using namespace contagion;

static void BM_ExactCycleChain(benchmark::State& state) {
  auto net = generate(gen::CycleChain{static_cast<std::size_t>(state.range(0)), 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(opt_exact(net));
}
BENCHMARK(BM_ExactCycleChain)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_ExactRandom(benchmark::State& state) {
  gen::Random r;
  r.n = static_cast<std::size_t>(state.range(0));
  r.density_num = 1;
  r.density_den = 4;
  r.scale = 2;
  r.weakly_balanced = true;
  r.seed = 3;
  auto net = generate(r);
  for (auto _ : state) benchmark::DoNotOptimize(opt_exact(net));
}
BENCHMARK(BM_ExactRandom)->DenseRange(6, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_GreedyCost(benchmark::State& state) {
  auto net = generate(gen::CycleChain{static_cast<std::size_t>(state.range(0)), 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(greedy(net, Method::GreedyCost));
}
BENCHMARK(BM_GreedyCost)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_StarPolicy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Amount> p(n);
  for (std::size_t i = 0; i + 1 < n; ++i) p[i] = make_rational(static_cast<long>(4 + i % 4), 4);
  auto net = generate(gen::Star{n, 2, 1, p});
  for (auto _ : state) benchmark::DoNotOptimize(star_policy(net));
}
BENCHMARK(BM_StarPolicy)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_PaymentCover(benchmark::State& state) {
  auto net = generate(gen::Wheel{static_cast<std::size_t>(state.range(0)), 1, 0});
  auto cycles = simple_cycles(net);
  for (auto _ : state) benchmark::DoNotOptimize(min_payment_cover(net, cycles));
}
BENCHMARK(BM_PaymentCover)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);
