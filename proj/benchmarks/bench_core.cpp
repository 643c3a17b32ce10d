#include <benchmark/benchmark.h>

#include "ladder/basis.hpp"
#include "ladder/closed_form.hpp"
#include "ladder/oracle.hpp"
#include "ladder/sweep.hpp"

namespace {

ladder::EnsembleConfig config_for(int n_atoms, double eta) {
  ladder::EnsembleConfig cfg;
  cfg.n_atoms = n_atoms;
  cfg.nbar1 = cfg.nbar2 = ladder::nbar_from_eta(eta);
  return cfg;
}

void BM_SteadyWeights(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder::steady_weights(cfg));
  }
}
BENCHMARK(BM_SteadyWeights)->Arg(20)->Arg(200)->Arg(2000);

void BM_FourthOrderCorrelator(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)), 0.5);
  const ladder::SteadyWeights sw = ladder::steady_weights(cfg);
  const std::vector<ladder::TransitionLabel> ops = {ladder::kS23, ladder::kS23,
                                                    ladder::kS32, ladder::kS32};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ladder::expectation_normal_product(sw.basis, ops, sw.w));
  }
}
BENCHMARK(BM_FourthOrderCorrelator)->Arg(20)->Arg(200)->Arg(2000);

void BM_FullReport(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder::compute_report(cfg));
  }
}
BENCHMARK(BM_FullReport)->Arg(20)->Arg(200);

void BM_BuildGenerator(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder::build_generator(cfg));
  }
}
BENCHMARK(BM_BuildGenerator)->Arg(3)->Arg(6);

void BM_SteadyStateNull(benchmark::State& state) {
  const auto cfg = config_for(static_cast<int>(state.range(0)), 0.5);
  const auto gen = ladder::build_generator(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ladder::steady_state_null(gen));
  }
}
BENCHMARK(BM_SteadyStateNull)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
