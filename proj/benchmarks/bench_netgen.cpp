#include <benchmark/benchmark.h>

#include "valnet/compare.hpp"
#include "valnet/dichotomize.hpp"
#include "valnet/netgen.hpp"

using namespace valnet;

namespace {

GenConfig base_config(int n, Family family) {
  GenConfig cfg;
  cfg.n = n;
  cfg.family = family;
  cfg.sigma_alpha = 1.0;
  return cfg;
}

}  // namespace

static void BM_SampleGamma(benchmark::State& state) {
  const GenConfig cfg = base_config(static_cast<int>(state.range(0)), Family::Gamma);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_graph(cfg, seed++));
  }
}
BENCHMARK(BM_SampleGamma)->Arg(50)->Arg(100)->Arg(200);

static void BM_SamplePoisson(benchmark::State& state) {
  const GenConfig cfg = base_config(static_cast<int>(state.range(0)), Family::Poisson);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_graph(cfg, seed++));
  }
}
BENCHMARK(BM_SamplePoisson)->Arg(50)->Arg(100)->Arg(200);

static void BM_CensorTopK(benchmark::State& state) {
  const ValuedGraph g =
      sample_graph(base_config(static_cast<int>(state.range(0)), Family::Gamma), 7)
          .first;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(censor_then_symmetrize(g, 5, seed++));
  }
}
BENCHMARK(BM_CensorTopK)->Arg(50)->Arg(100)->Arg(200);

static void BM_SweepCensorLadder(benchmark::State& state) {
  const ValuedGraph g =
      sample_graph(base_config(static_cast<int>(state.range(0)), Family::Gamma), 7)
          .first;
  std::vector<double> ks;
  for (int k = 1; k <= 10; ++k) ks.push_back(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sweep(g, DichotomizeMethod::Censor, ks, 3, all_statistics(), 11));
  }
}
BENCHMARK(BM_SweepCensorLadder)->Arg(32)->Arg(50);

BENCHMARK_MAIN();
