#include <benchmark/benchmark.h>

#include "mcs/annealing.hpp"
#include "mcs/dynamics.hpp"
#include "mcs/graph.hpp"
#include "mcs/kernel.hpp"

namespace {

using namespace mcs;

void BM_AssociationGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g1 = erdos_renyi(n, 0.5, 1);
  const Graph g2 = erdos_renyi(n, 0.5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(association_graph(g1, g2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssociationGraph)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_RdStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto assoc = association_graph(erdos_renyi(n, 0.5, 1), erdos_renyi(n, 0.5, 2));
  const auto w = dynamics::PayoffMatrix::bomze(assoc.graph);
  auto x = dynamics::barycenter(assoc.graph.order());
  for (auto _ : state) {
    x = dynamics::rd_step(w, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_RdStep)->Arg(10)->Arg(20)->Arg(30);

void BM_TwoPhaseRd(benchmark::State& state) {
  const auto assoc = association_graph(erdos_renyi(20, 0.5, 1), erdos_renyi(20, 0.5, 2));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::two_phase_rd(assoc.graph, 7));
}
BENCHMARK(BM_TwoPhaseRd)->Unit(benchmark::kMillisecond);

void BM_Aih(benchmark::State& state) {
  const auto assoc = association_graph(erdos_renyi(20, 0.5, 1), erdos_renyi(20, 0.5, 2));
  for (auto _ : state) benchmark::DoNotOptimize(annealing::run_aih(assoc, 7));
}
BENCHMARK(BM_Aih)->Unit(benchmark::kMillisecond);

void BM_ReduceFull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = erdos_renyi(n, 0.5, 3);
  const auto assoc = association_graph(g, permuted_copy(g, 4).first);
  const Graph co = complement(assoc.graph);
  for (auto _ : state) benchmark::DoNotOptimize(kernel::reduce_full(co, true));
}
BENCHMARK(BM_ReduceFull)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_LinearTimeSparse(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<std::size_t>(state.range(0)), 0.01, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernel::linear_time(g, true));
}
BENCHMARK(BM_LinearTimeSparse)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
