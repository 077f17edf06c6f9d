// Serial reference vs OpenMP evaluation of the per-sample g.o. kernels.

#include <benchmark/benchmark.h>

#include "gospace/catalog.hpp"
#include "gospace/gocheck.hpp"

namespace {

using gospace::Execution;

void run_go(benchmark::State& state, const char* space, const char* metric, Execution exec) {
  const auto cs = gospace::make_space(space);
  const auto l = gospace::parse_metric(metric);
  const auto us = gospace::sampling_plan(cs.decomposition, static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    auto r = gospace::evaluate_go(cs.space, cs.decomposition, l, us, exec);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void run_nr(benchmark::State& state, const char* space, const char* metric, Execution exec) {
  const auto cs = gospace::make_space(space);
  const auto l = gospace::parse_metric(metric);
  const auto us = gospace::sampling_plan(cs.decomposition, static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    auto r = gospace::evaluate_nr(cs.space, cs.decomposition, l, us, exec);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GoSerial_so5u2(benchmark::State& s) { run_go(s, "so5/u2", "phi:1,0,0.25", Execution::Serial); }
void BM_GoParallel_so5u2(benchmark::State& s) { run_go(s, "so5/u2", "phi:1,0,0.25", Execution::Parallel); }
void BM_GoSerial_sp3sp1(benchmark::State& s) { run_go(s, "sp3/sp1^3", "pert3:1,1,1,0.5", Execution::Serial); }
void BM_GoParallel_sp3sp1(benchmark::State& s) { run_go(s, "sp3/sp1^3", "pert3:1,1,1,0.5", Execution::Parallel); }
void BM_GoSerial_susu32(benchmark::State& s) { run_go(s, "su-su/3,2", "linear:1,2", Execution::Serial); }
void BM_GoParallel_susu32(benchmark::State& s) { run_go(s, "su-su/3,2", "linear:1,2", Execution::Parallel); }
void BM_NrSerial_sp3sp1(benchmark::State& s) { run_nr(s, "sp3/sp1^3", "linear:1,2,3", Execution::Serial); }
void BM_NrParallel_sp3sp1(benchmark::State& s) { run_nr(s, "sp3/sp1^3", "linear:1,2,3", Execution::Parallel); }

}  // namespace

BENCHMARK(BM_GoSerial_so5u2)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GoParallel_so5u2)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GoSerial_sp3sp1)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GoParallel_sp3sp1)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GoSerial_susu32)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GoParallel_susu32)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NrSerial_sp3sp1)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NrParallel_sp3sp1)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
