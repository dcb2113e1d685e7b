#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "repronum/date.hpp"
#include "repronum/epidata.hpp"
#include "repronum/gentime.hpp"

namespace repronum {

struct SimConfig {
  double true_r = 1.5;
  GenTimeDist gt = point_mass(1);
  std::int64_t seed_cases = 10;
  int horizon_days = 100;
  std::uint64_t rng_seed = 0;
  std::int64_t max_total_cases = 1'000'000;
  std::string region = "simulated";
  Date start_date{2020, 1, 1};
};

struct Simulation {
  IncidenceSeries series;
  // Day on which the case cap was reached, if it was.
  std::optional<std::size_t> stop_day;
};

// Expected count on the next day: true_r * sum_j w_j N_{t-j} over `history`
// (history.back() is the most recent day).
double expected_offspring(std::span<const std::int64_t> history, const GenTimeDist& gt, double true_r);

// Draws one day's count given the history.
std::int64_t sample_next_day(std::span<const std::int64_t> history, const GenTimeDist& gt, double true_r,
                             std::mt19937_64& rng);

// Discrete-day Poisson branching process without susceptible depletion:
// N_0 = seed_cases, N_t ~ Poisson(true_r * sum_j w_j N_{t-j}). Stops on the day
// the running total reaches max_total_cases; throws kExploded if that happens
// before twice the generation-time support has elapsed.
Simulation simulate_branching(const SimConfig& c);

}  // namespace repronum
