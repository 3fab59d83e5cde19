#include <benchmark/benchmark.h>

#include "zmd/coalescent.hpp"
#include "zmd/density.hpp"
#include "zmd/dual.hpp"
#include "zmd/graph.hpp"
#include "zmd/symfunc.hpp"
#include "zmd/zmeasure.hpp"

using namespace zmd;

static void BM_EnumeratePartitions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumeratePartitions)->Arg(10)->Arg(20)->Arg(30);

static void BM_GraphDimensions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BranchingGraph g(GraphKind::jack(Rational(2)));
    for (const auto& eta : enumerate_partitions(n)) benchmark::DoNotOptimize(g.dim(eta));
  }
}
BENCHMARK(BM_GraphDimensions)->Arg(6)->Arg(10);

static void BM_ZMeasureLevel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ZMeasure m(ZParams::make(parse_gaussian("0.3"), parse_gaussian("0.7"), Rational(1)));
    benchmark::DoNotOptimize(m.level(n)->total);
  }
}
BENCHMARK(BM_ZMeasureLevel)->Arg(8)->Arg(12)->Arg(20);

static void BM_JackExpansion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SymmetricAlgebra alg;
    for (const auto& eta : enumerate_partitions(n)) benchmark::DoNotOptimize(alg.jack_paper(eta, Rational(2)));
  }
}
BENCHMARK(BM_JackExpansion)->Arg(4)->Arg(6)->Arg(8);

static void BM_DmnTable(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(d_mn_table(0.5, m, 1.0));
}
BENCHMARK(BM_DmnTable)->Arg(10)->Arg(30)->Arg(60);

static void BM_DnTable(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 10;
  for (auto _ : state) benchmark::DoNotOptimize(d_n_table(t, 1.0));
}
BENCHMARK(BM_DnTable)->Arg(1)->Arg(5)->Arg(20);

static void BM_DualSimulation(benchmark::State& state) {
  const Partition nu{3, 2, 2, 1};
  DualSimulator sim(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sim.empirical_law(nu, 0.5, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DualSimulation)->Arg(10000);

static void BM_DensityEvaluate(benchmark::State& state) {
  ZMeasure measure(ZParams::make(parse_gaussian("0.6+0.8i"), parse_gaussian("0.6-0.8i"), Rational(1)));
  DensityModel model(measure);
  const auto pts = seeded_thoma_points(2, 1);
  const int trunc = static_cast<int>(state.range(0));
  model.evaluate(0.5, pts[0], pts[1], trunc);
  for (auto _ : state) benchmark::DoNotOptimize(model.evaluate(0.5, pts[0], pts[1], trunc));
}
BENCHMARK(BM_DensityEvaluate)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
