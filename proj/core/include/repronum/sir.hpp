#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "repronum/date.hpp"
#include "repronum/epidata.hpp"

namespace repronum::sir {

struct Params {
  double beta = 0.0;   // per-day transmission rate
  double gamma = 0.0;  // per-day recovery rate
};

// Population fractions; s + i + r = 1.
struct State {
  double s = 1.0;
  double i = 0.0;
  double r = 0.0;
};

struct Trajectory {
  Date start_date;
  double dt_days = 0.1;
  std::vector<State> states;
  std::int64_t population = 0;

  double time_at(std::size_t k) const { return static_cast<double>(k) * dt_days; }
  // Writes `day,s,i,r,cumulative_infected` rows, one per state.
  void write_csv(std::ostream& out) const;
};

struct Forecast {
  Params params;
  double r0 = 0.0;
  double herd_immunity_pct = 0.0;
  Date peak_date;
  double peak_day = 0.0;
  std::int64_t max_infected = 0;
  std::int64_t severe = 0;
  std::int64_t icu = 0;
  std::int64_t deaths = 0;
  // Cumulative ever-infected N(1 - s) at the end of the simulated horizon.
  std::int64_t cumulative_infected = 0;
  double horizon_days = 0.0;
};

struct BurdenFractions {
  static constexpr double kSevere = 0.20;
  static constexpr double kIcu = 0.06;
  static constexpr double kDeaths = 0.035;
};

inline constexpr double kFitStep = 0.1;
inline constexpr double kForecastStep = 0.05;

// Validates a state (components in [0,1], sum 1 within 1e-9).
void check_state(const State& st);

// Classical RK4 over [0, days]; floor(days/dt) + 1 states.
Trajectory integrate(const Params& p, const State& init, double days, double dt);

// State one RK4 step of size dt ahead.
State rk4_step(const Params& p, const State& st, double dt);

// Initial state from the first observed cumulative count (and optionally the
// first recovered count).
State initial_state(std::int64_t first_cumulative, std::int64_t population,
                    std::int64_t first_recovered = 0);

struct FitOptions {
  double dt = kFitStep;
  Params initial_guess{0.5, 0.4};
  double simplex_tolerance = 1e-7;
  int max_evaluations = 5000;
};

struct FitResult {
  Params params;
  double rmse = 0.0;
  int evaluations = 0;
  bool converged = false;
  // beta <= 1e-6 at the optimum.
  bool no_growth = false;
};

// RMSE between observed cumulative counts and N(1 - s(t)) at the observation days.
double cumulative_rmse(const Params& p, std::span<const double> observed_cumulative, std::int64_t population,
                       const State& init, double dt);

// Least-squares fit of (beta, gamma) to the cumulative curve implied by
// `incidence`, by Nelder-Mead over (log beta, log gamma).
// Throws kFitDiverged when day 0 has no cases, since the model then has no
// infectious seed and every (beta, gamma) fits equally well.
FitResult fit(const IncidenceSeries& incidence, std::int64_t population,
              std::optional<std::span<const std::int64_t>> recovered = std::nullopt,
              const FitOptions& options = {});

double r0(const Params& p);

// max(0, (1 - 1/r0) * 100).
double herd_immunity_threshold(double r0);

struct BurdenCounts {
  std::int64_t severe, icu, deaths;
};
BurdenCounts burden(std::int64_t max_infected);

// Runs forward from `init` until i(t) has declined for 30 consecutive days
// (at least `horizon_days`), capped at five years.
Forecast forecast(const Params& p, const State& init, std::int64_t population, Date start_date,
                  int horizon_days, double dt = kForecastStep);

}  // namespace repronum::sir
