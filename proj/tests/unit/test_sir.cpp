#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "repronum/sir.hpp"
#include "support/error_code.hpp"

using namespace repronum;
using namespace repronum::sir;

namespace {

constexpr std::int64_t kBangladesh = 161376708;
constexpr std::int64_t kIndia = 1380004385;

// Incidence whose cumulative curve follows N(1 - s(t)) from the model.
IncidenceSeries synthetic_incidence(const Params& p, std::int64_t n, const State& init, int days) {
  auto traj = integrate(p, init, days, kFitStep);
  std::vector<std::int64_t> counts;
  std::int64_t prev = 0;
  for (int d = 0; d < days; ++d) {
    const auto cum = static_cast<std::int64_t>(std::llround(static_cast<double>(n) * (1.0 - traj.states[static_cast<std::size_t>(d * 10)].s)));
    counts.push_back(cum - prev);
    prev = cum;
  }
  return IncidenceSeries("synthetic", Date(2020, 1, 1), counts);
}

}  // namespace

TEST(Integrate, NoTransmissionOnlyRecovers) {
  auto traj = integrate({0.0, 0.1}, {0.99, 0.01, 0.0}, 10, 0.1);
  EXPECT_EQ(traj.states.size(), 101u);
  EXPECT_NEAR(traj.states.back().i, 0.01 * std::exp(-1.0), 1e-9);
  EXPECT_DOUBLE_EQ(traj.states.back().s, 0.99);
}

TEST(Integrate, ThresholdStateHoldsPrevalenceInitially) {
  // beta == gamma with s near 1: di/dt starts at ~0 and then turns negative.
  auto traj = integrate({0.3, 0.3}, {1.0 - 1e-6, 1e-6, 0.0}, 50, 0.1);
  EXPECT_NEAR(traj.states[1].i, 1e-6, 1e-12);
  EXPECT_LE(traj.states.back().i, 1e-6);
}

TEST(Integrate, ConservesPopulationAndIsMonotone) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rate(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Params p{rate(rng), rate(rng)};
    auto traj = integrate(p, {0.999, 0.001, 0.0}, 200, 0.1);
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const auto& st = traj.states[k];
      EXPECT_NEAR(st.s + st.i + st.r, 1.0, 1e-9);
      if (k > 0) {
        EXPECT_LE(st.s, traj.states[k - 1].s + 1e-15);
        EXPECT_GE(st.r, traj.states[k - 1].r - 1e-15);
      }
    }
  }
}

TEST(Integrate, FourthOrderConvergence) {
  const Params p{0.55, 0.45};
  const State init{0.99, 0.01, 0.0};
  const State ref = integrate(p, init, 50, 1e-4).states.back();
  auto err = [&](double dt) { return std::abs(integrate(p, init, 50, dt).states.back().i - ref.i); };
  EXPECT_GE(err(0.2) / err(0.1), 12.0);
  EXPECT_GE(err(0.4) / err(0.2), 12.0);
}

TEST(Integrate, R0AboveOneIffPrevalenceRisesInitially) {
  for (double beta : {0.2, 0.35, 0.45, 0.55, 0.9}) {
    const Params p{beta, 0.4};
    auto traj = integrate(p, {0.9999, 0.0001, 0.0}, 1, 0.1);
    EXPECT_EQ(r0(p) > 1.0, traj.states.back().i > traj.states.front().i) << "beta " << beta;
  }
}

TEST(Integrate, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { integrate({0.5, 0.4}, {0.99, 0.01, 0.0}, 10, 0.0); }), ErrorCode::kBadStep);
  EXPECT_EQ(code_of([] { integrate({0.5, 0.4}, {0.99, 0.01, 0.0}, 10, 0.6); }), ErrorCode::kBadStep);
  EXPECT_EQ(code_of([] { integrate({0.5, 0.4}, {0.99, 0.01, 0.0}, -1, 0.1); }), ErrorCode::kBadHorizon);
}

TEST(R0, RatioOfRates) {
  EXPECT_NEAR(r0({0.5524, 0.4475}), 1.234, 1e-3);
  EXPECT_NEAR(r0({0.550, 0.449}), 1.225, 5e-3);
  EXPECT_EQ(r0({0.3, 0.3}), 1.0);
}

TEST(HerdImmunity, ThresholdPercent) {
  EXPECT_NEAR(herd_immunity_threshold(1.234), 18.96, 0.1);
  EXPECT_EQ(herd_immunity_threshold(1.0), 0.0);
  EXPECT_EQ(herd_immunity_threshold(0.5), 0.0);
}

TEST(Burden, FixedFractions) {
  auto b = burden(1'000'000);
  EXPECT_EQ(b.severe, 200'000);
  EXPECT_EQ(b.icu, 60'000);
  EXPECT_EQ(b.deaths, 35'000);
}

TEST(Fit, RecoversParametersFromNoiseFreeCurve) {
  const Params truth{0.55, 0.45};
  const std::int64_t n = 100'000'000;
  const State init = initial_state(100, n);
  auto inc = synthetic_incidence(truth, n, init, 100);
  auto fitted = fit(inc, n);
  EXPECT_NEAR(fitted.params.beta / truth.beta, 1.0, 0.01);
  EXPECT_NEAR(fitted.params.gamma / truth.gamma, 1.0, 0.01);
  EXPECT_TRUE(fitted.converged);
  EXPECT_FALSE(fitted.no_growth);
}

TEST(Fit, NoCasesAfterDayZeroMeansNoGrowth) {
  std::vector<std::int64_t> counts(20, 0);
  counts[0] = 5;
  try {
    auto fitted = fit(IncidenceSeries("flat", Date(2020, 1, 1), counts), 1'000'000);
    EXPECT_TRUE(fitted.no_growth || r0(fitted.params) < 1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFitDiverged);
  }
}

TEST(Fit, NoSeedOnDayZeroDiverges) {
  IncidenceSeries flat("flat", Date(2020, 1, 1), std::vector<std::int64_t>(20, 0));
  EXPECT_EQ(code_of([&] { fit(flat, 1'000'000); }), ErrorCode::kFitDiverged);
}

TEST(Fit, NeedsTenDays) {
  IncidenceSeries short_series("s", Date(2020, 1, 1), {1, 2, 3, 4, 5});
  EXPECT_EQ(code_of([&] { fit(short_series, 1000); }), ErrorCode::kTooShort);
}

TEST(Forecast, BangladeshPeakWindowAndMaximum) {
  const Params p{0.5524, 0.4475};
  auto fc = forecast(p, initial_state(3, kBangladesh), kBangladesh, Date(2020, 3, 8), 104);
  EXPECT_GE(fc.peak_day, 130.0);
  EXPECT_LE(fc.peak_day, 170.0);
  EXPECT_NEAR(static_cast<double>(fc.max_infected), 3'109'321.0, 0.10 * 3'109'321.0);
  EXPECT_EQ(fc.severe, burden(fc.max_infected).severe);
  EXPECT_GE(fc.cumulative_infected, fc.max_infected);
}

TEST(Forecast, IndiaDeathsWithinTenPercent) {
  const Params p{0.5449, 0.4550};
  auto fc = forecast(p, initial_state(1, kIndia), kIndia, Date(2020, 1, 30), 142);
  EXPECT_NEAR(static_cast<double>(fc.deaths), 695'946.0, 0.10 * 695'946.0);
}

TEST(Forecast, SubcriticalEpidemicPeaksImmediately) {
  auto fc = forecast({0.2, 0.4}, initial_state(100, 1'000'000), 1'000'000, Date(2020, 1, 1), 30);
  EXPECT_NEAR(fc.peak_day, 0.0, 1e-12);
  EXPECT_EQ(fc.herd_immunity_pct, 0.0);
}
