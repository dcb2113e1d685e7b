#include <benchmark/benchmark.h>

#include <random>

#include "repronum/restimators.hpp"
#include "repronum/simoracle.hpp"
#include "repronum/sir.hpp"

using namespace repronum;

namespace {

const GenTimeDist& wuhan() {
  static const GenTimeDist g = discretize_gamma(5.2, 2.8);
  return g;
}

// Branching-process series with `days` days, R = 1.3.
IncidenceSeries sample_series(int days) {
  SimConfig c;
  c.true_r = 1.3;
  c.gt = wuhan();
  c.seed_cases = 20;
  c.horizon_days = days - 1;
  c.max_total_cases = 1'000'000'000;
  c.rng_seed = 7;
  return simulate_branching(c).series;
}

void BM_SirIntegrate(benchmark::State& state) {
  const double days = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sir::integrate({0.55, 0.45}, {0.99999, 0.00001, 0.0}, days, sir::kForecastStep));
  }
}
BENCHMARK(BM_SirIntegrate)->Arg(100)->Arg(365);

void BM_SirFit(benchmark::State& state) {
  const std::int64_t n = 100'000'000;
  auto traj = sir::integrate({0.55, 0.45}, sir::initial_state(100, n), 100, sir::kFitStep);
  std::vector<std::int64_t> counts;
  std::int64_t prev = 0;
  for (std::size_t d = 0; d < 100; ++d) {
    const auto cum = std::llround(static_cast<double>(n) * (1.0 - traj.states[d * 10].s));
    counts.push_back(cum - prev);
    prev = cum;
  }
  IncidenceSeries s("fit", Date(2020, 1, 1), counts);
  for (auto _ : state) benchmark::DoNotOptimize(sir::fit(s, n));
}
BENCHMARK(BM_SirFit)->Unit(benchmark::kMillisecond);

void BM_EstimateEg(benchmark::State& state) {
  auto s = sample_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_eg(s, wuhan()));
}
BENCHMARK(BM_EstimateEg)->Arg(60)->Arg(150);

void BM_EstimateMl(benchmark::State& state) {
  auto s = sample_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ml(s, wuhan()));
}
BENCHMARK(BM_EstimateMl)->Arg(60)->Arg(150);

void BM_EstimateSb(benchmark::State& state) {
  auto s = sample_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_sb(s, wuhan()));
}
BENCHMARK(BM_EstimateSb)->Arg(60)->Arg(150)->Unit(benchmark::kMicrosecond);

void BM_EstimateTd(benchmark::State& state) {
  auto s = sample_series(150);
  std::mt19937_64 rng(1);
  const int resamples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_td(s, wuhan(), resamples, rng));
}
BENCHMARK(BM_EstimateTd)->Arg(0)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
