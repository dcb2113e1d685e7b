#include "repronum/simoracle.hpp"

#include <cmath>

#include "repronum/error.hpp"

namespace repronum {

double expected_offspring(std::span<const std::int64_t> history, const GenTimeDist& gt, double true_r) {
  double pressure = 0.0;
  const std::size_t n = history.size();
  for (std::size_t j = 1; j <= std::min(gt.max_lag(), n); ++j) {
    pressure += gt.weights()[j - 1] * static_cast<double>(history[n - j]);
  }
  return true_r * pressure;
}

std::int64_t sample_next_day(std::span<const std::int64_t> history, const GenTimeDist& gt, double true_r,
                             std::mt19937_64& rng) {
  const double mean = expected_offspring(history, gt, true_r);
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<std::int64_t> draw(mean);
  return draw(rng);
}

Simulation simulate_branching(const SimConfig& c) {
  if (!(c.true_r > 0.0) || !std::isfinite(c.true_r)) {
    throw Error(ErrorCode::kInvalidArgument, "true R must be positive");
  }
  if (c.seed_cases < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one seed case");
  if (c.horizon_days < 0) throw Error(ErrorCode::kBadHorizon, "horizon must be non-negative");
  if (c.max_total_cases < c.seed_cases) {
    throw Error(ErrorCode::kInvalidArgument, "case cap must be at least the seed count");
  }

  std::mt19937_64 rng(c.rng_seed);
  std::vector<std::int64_t> counts{c.seed_cases};
  std::int64_t total = c.seed_cases;
  std::optional<std::size_t> stop_day;
  if (total >= c.max_total_cases && c.horizon_days > 0) stop_day = 0;

  for (int t = 1; t <= c.horizon_days && !stop_day; ++t) {
    const std::int64_t n = sample_next_day(counts, c.gt, c.true_r, rng);
    counts.push_back(n);
    total += n;
    if (total >= c.max_total_cases) stop_day = static_cast<std::size_t>(t);
  }
  if (stop_day && *stop_day < 2 * c.gt.max_lag()) {
    throw Error(ErrorCode::kExploded, "case cap reached on day " + std::to_string(*stop_day) +
                                          ", before two generation-time supports elapsed");
  }
  return {IncidenceSeries(c.region, c.start_date, std::move(counts)), stop_day};
}

}  // namespace repronum
