#include <benchmark/benchmark.h>

#include "racmod/approximation.hpp"
#include "racmod/curves.hpp"
#include "racmod/growth.hpp"
#include "racmod/modulus.hpp"

using namespace racmod;

static void BM_Cliques(benchmark::State& state) {
  const auto g = graphs::dodecahedron();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cliques(g));
}
BENCHMARK(BM_Cliques);

static void BM_GrowthRate(benchmark::State& state) {
  const auto g = graphs::dodecahedron();
  const auto poly = clique_polynomial(GroupSpec(g, 2), enumerate_cliques(g));
  for (auto _ : state) benchmark::DoNotOptimize(growth_rate(poly));
}
BENCHMARK(BM_GrowthRate);

static void BM_SphereBfs(benchmark::State& state) {
  const GroupSpec spec(graphs::dodecahedron(), 2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_counts_bfs(spec, k));
}
BENCHMARK(BM_SphereBfs)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Approximation(benchmark::State& state) {
  const GroupSpec spec(graphs::cycle(5), 2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_approximation(spec, k, 2));
}
BENCHMARK(BM_Approximation)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_ModulusSolve(benchmark::State& state) {
  const auto a = build_approximation(GroupSpec(graphs::cycle(5), 2), static_cast<int>(state.range(0)), 2);
  const auto family = build_curve_family(a, 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_modulus(family, 2.0));
}
BENCHMARK(BM_ModulusSolve)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
