#include <benchmark/benchmark.h>

#include "dce/analysis.hpp"
#include "dce/powalloc.hpp"
#include "dce/simulation.hpp"

namespace {

void BM_Svd(benchmark::State& state) {
  dce::RngStream rng(1, 0);
  const auto m = dce::complex_gaussian(rng, static_cast<int>(state.range(0)),
                                       static_cast<int>(state.range(1)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dce::svd(m));
}
BENCHMARK(BM_Svd)->Args({2, 4})->Args({4, 4})->Args({4, 140})->Args({8, 200});

void BM_RunTrial(benchmark::State& state) {
  const auto scheme = static_cast<dce::Scheme>(state.range(0));
  const auto mode = static_cast<dce::AttackMode>(state.range(1));
  const dce::SystemConfig cfg;
  const dce::PowerAllocation alloc = dce::solve(dce::PowerAllocationProblem(cfg));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dce::run_trial(cfg, alloc, scheme, {mode, 1.0}, dce::RngStream(1, trial++)));
  }
  state.SetLabel(std::string(dce::to_string(scheme)) + "/" + std::string(dce::to_string(mode)));
}
BENCHMARK(BM_RunTrial)
    ->Args({static_cast<int>(dce::Scheme::wr), static_cast<int>(dce::AttackMode::none)})
    ->Args({static_cast<int>(dce::Scheme::wr), static_cast<int>(dce::AttackMode::guess)})
    ->Args({static_cast<int>(dce::Scheme::lmmse), static_cast<int>(dce::AttackMode::none)})
    ->Args({static_cast<int>(dce::Scheme::lmmse), static_cast<int>(dce::AttackMode::known_pilot)})
    ->Args({static_cast<int>(dce::Scheme::wr_perfect_csi), static_cast<int>(dce::AttackMode::none)});

void BM_Solve(benchmark::State& state) {
  const dce::PowerAllocationProblem problem{dce::SystemConfig{}};
  for (auto _ : state) benchmark::DoNotOptimize(dce::solve(problem));
}
BENCHMARK(BM_Solve);

void BM_GridOracle(benchmark::State& state) {
  const dce::PowerAllocationProblem problem{dce::SystemConfig{}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dce::solve_grid_oracle(problem, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_GridOracle)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
  dce::ExperimentSpec spec;
  spec.trials = state.range(0);
  spec.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dce::run_experiment(spec));
  state.SetItemsProcessed(state.iterations() * spec.trials);
}
BENCHMARK(BM_RunExperiment)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
