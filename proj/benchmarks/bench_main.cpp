#include <benchmark/benchmark.h>

#include "moonshine/congruence.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/grouprep.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/qseries.hpp"

using namespace moonshine;

static void BM_SeriesMultiply(benchmark::State& state) {
  const QSeries a = j_function(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a * a);
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(4)->Range(64, 4096);

static void BM_JFunction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(j_function(state.range(0)));
}
BENCHMARK(BM_JFunction)->RangeMultiplier(4)->Range(64, 4096);

static void BM_Hecke(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  const QSeries J = j_function(hecke_input_precision(m, 10));
  for (auto _ : state) benchmark::DoNotOptimize(hecke(J, m));
}
BENCHMARK(BM_Hecke)->Arg(7)->Arg(113)->Arg(791);

static void BM_Hauptmodul(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hauptmodul(state.range(0), 1000));
}
BENCHMARK(BM_Hauptmodul)->Arg(2)->Arg(7)->Arg(25);

static void BM_PrimePowerRelation(benchmark::State& state) {
  const std::vector<std::int64_t> levels = {1, 2, 4, 8, 16};
  const std::int64_t prefix = conservative_prefix(levels);
  for (auto _ : state) benchmark::DoNotOptimize(max_prime_power_relation(levels, 2, prefix));
}
BENCHMARK(BM_PrimePowerRelation);

static void BM_Lemma43(benchmark::State& state) {
  const auto shapes = abelian_shapes_of_order(state.range(0));
  for (auto _ : state)
    for (const auto& g : shapes) benchmark::DoNotOptimize(lemma43_mismatch(g));
}
BENCHMARK(BM_Lemma43)->Arg(256)->Arg(1536);
BENCHMARK_MAIN();
