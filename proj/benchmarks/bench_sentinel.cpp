#include <vector>

#include <benchmark/benchmark.h>

#include "sentinel/distributions.hpp"
#include "sentinel/pit.hpp"
#include "sentinel/umptest.hpp"
#include "sentinel/verify.hpp"

using namespace sentinel;

static void BM_PoissonCdf(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0));
  const auto d = NullDistribution::poisson(mean);
  double x = mean;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(d, x));
    x = x > 1.2 * mean ? 0.8 * mean : x + 1.0;
  }
}
BENCHMARK(BM_PoissonCdf)->Arg(1)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_PoissonQuantile(benchmark::State& state) {
  const auto d = NullDistribution::poisson(static_cast<double>(state.range(0)));
  RandomStream s(1);
  for (auto _ : state) benchmark::DoNotOptimize(skorokhod_quantile(d, s.next_uniform()));
}
BENCHMARK(BM_PoissonQuantile)->Arg(1)->Arg(1000)->Arg(1000000);

static void BM_ExtremenessPanel40(benchmark::State& state) {
  const std::vector<NullDistribution> d(40, NullDistribution::poisson(1.0));
  const std::vector<double> x(40, 1.0);
  RandomStream s(2);
  for (auto _ : state) benchmark::DoNotOptimize(extremeness_panel(d, x, s));
}
BENCHMARK(BM_ExtremenessPanel40);

static void BM_PhiExpected40(benchmark::State& state) {
  const std::vector<NullDistribution> d(40, NullDistribution::poisson(1.0));
  std::vector<double> x(40, 1.0);
  x[7] = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(phi_expected(d, x, 0.05));
}
BENCHMARK(BM_PhiExpected40);

static void BM_SimulateNull(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.n_trials = static_cast<std::size_t>(state.range(0));
  cfg.panel_template.assign(40, NullDistribution::poisson(1.0));
  cfg.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_size_and_power(cfg));
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateNull)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
