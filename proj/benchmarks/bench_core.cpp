#include <benchmark/benchmark.h>

#include "garchx/diagnostics.hpp"
#include "garchx/garch.hpp"
#include "garchx/simulate.hpp"
#include "garchx/unitroot.hpp"

namespace {

using namespace garchx;

const GarchParams kParams{0.0, 0.5, 0.1, 0.8, 0.1};

Simulation sample(std::size_t n) { return simulate({kParams, n, 500, 7}); }

void BM_LogLikelihood(benchmark::State& state) {
  const auto sim = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood(kParams, sim.returns, sim.exog, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Arg(212)->Arg(5000);

void BM_Fit(benchmark::State& state) {
  const auto data = sample(static_cast<std::size_t>(state.range(0))).dataset();
  for (auto _ : state) benchmark::DoNotOptimize(fit(data));
}
BENCHMARK(BM_Fit)->Arg(212)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_AdfBic(benchmark::State& state) {
  const auto sim = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(adf_test(sim.returns));
}
BENCHMARK(BM_AdfBic)->Arg(212)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_PhillipsPerron(benchmark::State& state) {
  const auto sim = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pp_test(sim.returns));
}
BENCHMARK(BM_PhillipsPerron)->Arg(212)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_Diagnostics(benchmark::State& state) {
  const auto sim = sample(2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ljung_box(sim.returns, 10));
    benchmark::DoNotOptimize(arch_lm(sim.returns, 5));
  }
}
BENCHMARK(BM_Diagnostics)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample(static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(5000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
