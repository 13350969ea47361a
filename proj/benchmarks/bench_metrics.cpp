#include <benchmark/benchmark.h>

#include "valnet/metrics.hpp"
#include "valnet/netgen.hpp"

using namespace valnet;

namespace {

ValuedGraph make_graph(int n) {
  GenConfig cfg;
  cfg.n = n;
  cfg.family = Family::Gamma;
  cfg.sigma_alpha = 1.0;
  return sample_graph(cfg, 42).first;
}

}  // namespace

static void BM_GeodesicDistances(benchmark::State& state) {
  const ValuedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesic_distances(g));
  }
}
BENCHMARK(BM_GeodesicDistances)->Arg(50)->Arg(100)->Arg(200);

static void BM_EffectiveConductance(benchmark::State& state) {
  const ValuedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_conductance(g));
  }
}
BENCHMARK(BM_EffectiveConductance)->Arg(50)->Arg(100)->Arg(200);

static void BM_OhmicBetweenness(benchmark::State& state) {
  const ValuedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ohmic_betweenness_fp(g));
  }
}
BENCHMARK(BM_OhmicBetweenness)->Arg(32)->Arg(50)->Arg(100);

static void BM_LaplacianPseudoinverse(benchmark::State& state) {
  const ValuedGraph g = make_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplacian_pseudoinverse(g.weights()));
  }
}
BENCHMARK(BM_LaplacianPseudoinverse)->Arg(50)->Arg(100)->Arg(200);
