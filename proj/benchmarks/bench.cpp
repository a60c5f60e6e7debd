#include <benchmark/benchmark.h>

#include "ellsum/classnum.hpp"
#include "ellsum/curves.hpp"
#include "ellsum/family_io.hpp"
#include "ellsum/isogeny.hpp"
#include "ellsum/moments.hpp"

using namespace ellsum;

namespace {

const curves::WeierstrassFamily& legendre() {
  static const auto f = io::parse_family(std::string(ELLSUM_DATA_DIR) + "/families/legendre.txt");
  return f;
}

void BM_FiberTraces(benchmark::State& state) {
  const std::int64_t p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(curves::fiber_traces(legendre(), p));
  state.SetItemsProcessed(state.iterations() * p * p);
}
BENCHMARK(BM_FiberTraces)->Arg(1009)->Arg(10007);

void BM_ApShort(benchmark::State& state) {
  const curves::QuadraticCharacter chi(10007);
  std::int64_t a = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(curves::ap_short(a, 7, chi));
    a = a % 10000 + 1;
  }
}
BENCHMARK(BM_ApShort);

void BM_ClassNumber(benchmark::State& state) {
  const std::int64_t d = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(classnum::class_number(d));
}
BENCHMARK(BM_ClassNumber)->Arg(4 * 10007 - 4)->Arg(4 * 100003 - 4);

void BM_HurwitzTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classnum::HurwitzTable(state.range(0)));
}
BENCHMARK(BM_HurwitzTable)->Arg(40000)->Arg(400000)->Unit(benchmark::kMillisecond);

void BM_WeightedMoment(benchmark::State& state) {
  static const classnum::HurwitzTable table(400000);
  const std::int64_t m = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(moments::weighted_moment(99991, 4, m, table));
}
BENCHMARK(BM_WeightedMoment)->Arg(1)->Arg(15);

void BM_TraceFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(moments::eichler_selberg_trace(9973, 12, state.range(0)));
}
BENCHMARK(BM_TraceFormula)->Arg(1)->Arg(11);

void BM_SubgroupOracle(benchmark::State& state) {
  const auto gens = isogeny::cyclic_subgroup_generators(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(isogeny::frobenius_subgroup_oracle(4, 1, 97, state.range(0), gens));
}
BENCHMARK(BM_SubgroupOracle)->Arg(125)->Arg(2401);

void BM_CountMine(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(isogeny::count_mine(4, 1, 97, state.range(0)));
}
BENCHMARK(BM_CountMine)->Arg(125)->Arg(2401);

}  // namespace

BENCHMARK_MAIN();
