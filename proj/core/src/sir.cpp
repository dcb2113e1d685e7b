#include "repronum/sir.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "repronum/error.hpp"
#include "repronum/nelder_mead.hpp"

namespace repronum::sir {

namespace {

constexpr double kMaxStep = 0.5;
constexpr double kFiveYears = 5.0 * 365.0;
constexpr double kDeclineDays = 30.0;

void check_params(const Params& p) {
  if (!(p.gamma > 0.0) || !(p.beta >= 0.0) || !std::isfinite(p.beta) || !std::isfinite(p.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "SIR parameters need beta >= 0 and gamma > 0");
  }
}

void check_step(double dt) {
  if (!(dt > 0.0) || dt > kMaxStep) throw Error(ErrorCode::kBadStep, "dt must be in (0, 0.5]");
}

int steps_per_day(double dt) { return std::max(1, static_cast<int>(std::lround(1.0 / dt))); }

}  // namespace

void check_state(const State& st) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(st.s) || !in_unit(st.i) || !in_unit(st.r) || std::abs(st.s + st.i + st.r - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "SIR state must be fractions summing to 1");
  }
}

State rk4_step(const Params& p, const State& st, double dt) {
  auto deriv = [&](double s, double i) {
    double infection = p.beta * s * i;
    double recovery = p.gamma * i;
    return State{-infection, infection - recovery, recovery};
  };
  State k1 = deriv(st.s, st.i);
  State k2 = deriv(st.s + 0.5 * dt * k1.s, st.i + 0.5 * dt * k1.i);
  State k3 = deriv(st.s + 0.5 * dt * k2.s, st.i + 0.5 * dt * k2.i);
  State k4 = deriv(st.s + dt * k3.s, st.i + dt * k3.i);
  return {st.s + dt / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
          st.i + dt / 6.0 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i),
          st.r + dt / 6.0 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r)};
}

Trajectory integrate(const Params& p, const State& init, double days, double dt) {
  check_params(p);
  check_state(init);
  check_step(dt);
  if (!(days > 0.0) || !std::isfinite(days)) throw Error(ErrorCode::kBadHorizon, "horizon must be positive");

  auto steps = static_cast<std::size_t>(std::floor(days / dt + 1e-9));
  Trajectory traj;
  traj.dt_days = dt;
  traj.states.reserve(steps + 1);
  traj.states.push_back(init);
  for (std::size_t k = 0; k < steps; ++k) traj.states.push_back(rk4_step(p, traj.states.back(), dt));
  return traj;
}

void Trajectory::write_csv(std::ostream& out) const {
  out << "day,s,i,r,cumulative_infected\n";
  auto old_precision = out.precision(12);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& st = states[k];
    out << time_at(k) << ',' << st.s << ',' << st.i << ',' << st.r << ','
        << std::llround(static_cast<double>(population) * (1.0 - st.s)) << '\n';
  }
  out.precision(old_precision);
}

State initial_state(std::int64_t first_cumulative, std::int64_t population, std::int64_t first_recovered) {
  if (population <= 0) throw Error(ErrorCode::kInvalidArgument, "population must be positive");
  if (first_cumulative < 0 || first_cumulative > population || first_recovered < 0 ||
      first_recovered > first_cumulative) {
    throw Error(ErrorCode::kInvalidArgument, "initial counts inconsistent with population");
  }
  const auto n = static_cast<double>(population);
  State st;
  st.r = static_cast<double>(first_recovered) / n;
  st.i = static_cast<double>(first_cumulative - first_recovered) / n;
  st.s = 1.0 - st.i - st.r;
  return st;
}

double cumulative_rmse(const Params& p, std::span<const double> observed_cumulative, std::int64_t population,
                       const State& init, double dt) {
  const int per_day = steps_per_day(dt);
  const double h = 1.0 / per_day;
  const auto n = static_cast<double>(population);
  State st = init;
  double sse = 0.0;
  for (std::size_t t = 0; t < observed_cumulative.size(); ++t) {
    if (t > 0) {
      for (int k = 0; k < per_day; ++k) st = rk4_step(p, st, h);
    }
    double err = n * (1.0 - st.s) - observed_cumulative[t];
    sse += err * err;
  }
  return std::sqrt(sse / static_cast<double>(observed_cumulative.size()));
}

FitResult fit(const IncidenceSeries& incidence, std::int64_t population,
              std::optional<std::span<const std::int64_t>> recovered, const FitOptions& options) {
  if (incidence.size() < 10) throw Error(ErrorCode::kTooShort, "SIR fit needs at least 10 days");
  check_step(options.dt);
  auto cumulative = cumulative_sums(incidence);
  if (population <= cumulative.back()) {
    throw Error(ErrorCode::kInvalidArgument, "population must exceed the cumulative case count");
  }
  if (cumulative[0] == 0) {
    throw Error(ErrorCode::kFitDiverged, "no infectious seed on day 0; the window must start on a day with cases");
  }
  std::int64_t first_recovered = 0;
  if (recovered && !recovered->empty()) first_recovered = std::min((*recovered)[0], cumulative[0]);
  const State init = initial_state(cumulative[0], population, first_recovered);

  std::vector<double> observed(cumulative.begin(), cumulative.end());
  auto objective = [&](const std::vector<double>& log_params) {
    Params p{std::exp(log_params[0]), std::exp(log_params[1])};
    return cumulative_rmse(p, observed, population, init, options.dt);
  };

  NelderMeadOptions nm;
  nm.diameter_tolerance = options.simplex_tolerance;
  nm.max_evaluations = options.max_evaluations;
  auto best = nelder_mead(objective,
                          {std::log(options.initial_guess.beta), std::log(options.initial_guess.gamma)}, nm);

  FitResult result;
  result.params = {std::exp(best.x[0]), std::exp(best.x[1])};
  result.rmse = best.value;
  result.evaluations = best.evaluations;
  result.converged = best.converged;
  if (!std::isfinite(best.value) || !std::isfinite(result.params.beta) || !std::isfinite(result.params.gamma)) {
    throw Error(ErrorCode::kFitDiverged, "SIR objective is not finite at the optimum");
  }
  result.no_growth = result.params.beta <= 1e-6;
  return result;
}

double r0(const Params& p) { return p.beta / p.gamma; }

double herd_immunity_threshold(double r0) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r0 must be positive");
  return std::max(0.0, (1.0 - 1.0 / r0) * 100.0);
}

BurdenCounts burden(std::int64_t max_infected) {
  const auto m = static_cast<double>(max_infected);
  return {std::llround(BurdenFractions::kSevere * m), std::llround(BurdenFractions::kIcu * m),
          std::llround(BurdenFractions::kDeaths * m)};
}

Forecast forecast(const Params& p, const State& init, std::int64_t population, Date start_date, int horizon_days,
                  double dt) {
  check_params(p);
  check_state(init);
  check_step(dt);
  if (population <= 0) throw Error(ErrorCode::kInvalidArgument, "population must be positive");
  if (horizon_days <= 0) throw Error(ErrorCode::kBadHorizon, "forecast horizon must be positive");

  State st = init;
  double t = 0.0, peak_t = 0.0, peak_i = init.i;
  std::size_t k = 0;
  while (true) {
    bool past_horizon = t >= static_cast<double>(horizon_days) - 1e-9;
    bool capped = t >= kFiveYears - 1e-9;
    if ((past_horizon || capped) && t - peak_t >= kDeclineDays - 1e-9) break;
    if (capped) {
      throw Error(ErrorCode::kNoPeak, "infections still rising after five years");
    }
    st = rk4_step(p, st, dt);
    ++k;
    t = static_cast<double>(k) * dt;
    if (st.i > peak_i) {
      peak_i = st.i;
      peak_t = t;
    }
  }

  const auto n = static_cast<double>(population);
  Forecast f;
  f.params = p;
  f.r0 = r0(p);
  f.herd_immunity_pct = herd_immunity_threshold(f.r0);
  f.peak_day = peak_t;
  f.peak_date = start_date + static_cast<int>(std::lround(peak_t));
  f.max_infected = std::llround(n * peak_i);
  auto b = burden(f.max_infected);
  f.severe = b.severe;
  f.icu = b.icu;
  f.deaths = b.deaths;
  f.cumulative_infected = std::llround(n * (1.0 - st.s));
  f.horizon_days = t;
  return f;
}

}  // namespace repronum::sir
