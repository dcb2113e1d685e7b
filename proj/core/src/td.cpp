#include <algorithm>
#include <cmath>

#include "repronum/error.hpp"
#include "repronum/restimators.hpp"

namespace repronum {

namespace {

// D_s = sum_{u<s} N_u w(s-u): total infection pressure on day s.
std::vector<double> pressure(const IncidenceSeries& s, const GenTimeDist& g) {
  const long k = static_cast<long>(g.max_lag());
  std::vector<double> d(s.size(), 0.0);
  for (long day = 1; day < static_cast<long>(s.size()); ++day) {
    for (long u = std::max(0L, day - k); u < day; ++u) {
      d[static_cast<std::size_t>(day)] += static_cast<double>(s[static_cast<std::size_t>(u)]) * g.at_lag(day - u);
    }
  }
  return d;
}

double percentile(std::vector<double>& v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<double> td_point_estimates(const IncidenceSeries& s, const GenTimeDist& g) {
  const auto d = pressure(s, g);
  const long k = static_cast<long>(g.max_lag());
  const long n = static_cast<long>(s.size());
  std::vector<double> r(s.size(), 0.0);
  for (long t = 0; t < n; ++t) {
    double acc = 0.0;
    for (long day = t + 1; day <= std::min(n - 1, t + k); ++day) {
      const auto sd = static_cast<std::size_t>(day);
      if (d[sd] > 0.0) acc += static_cast<double>(s[sd]) * g.at_lag(day - t) / d[sd];
    }
    r[static_cast<std::size_t>(t)] = acc;
  }
  return r;
}

TdResult estimate_td(const IncidenceSeries& s, const GenTimeDist& g, int n_resamples, std::mt19937_64& rng) {
  const std::size_t k = g.max_lag();
  if (s.size() <= k) {
    throw Error(ErrorCode::kTooShort, "time-dependent estimation needs more days than the generation-time support");
  }
  if (n_resamples != 0 && n_resamples < 100) {
    throw Error(ErrorCode::kInvalidArgument, "interval resampling needs at least 100 replicates");
  }

  const auto d = pressure(s, g);
  TdResult out;
  for (std::size_t day = 0; day < s.size(); ++day) {
    if (s[day] == 0) continue;
    if (d[day] > 0.0) {
      out.reachable_cases += s[day];
    } else {
      out.unrooted_days.push_back(day);
      if (day > 0) {
        out.trajectory.warnings.push_back("NoAncestors: " + s.date_at(day).iso() + " has " +
                                          std::to_string(s[day]) + " case(s) with no possible infector");
      }
    }
  }
  if (out.reachable_cases == 0) {
    throw Error(ErrorCode::kNoAncestors, "no case has a possible infector in the series");
  }

  auto& traj = out.trajectory;
  traj.method = Method::kTD;
  traj.start_date = s.start_date();
  traj.r_mean = td_point_estimates(s, g);
  traj.r_low = traj.r_mean;
  traj.r_high = traj.r_mean;
  traj.censored.resize(s.size());
  const std::size_t last = s.last();
  for (std::size_t t = 0; t < s.size(); ++t) traj.censored[t] = t + k > last;

  if (n_resamples == 0) return out;

  // Replicate transmission trees: each day-s case picks an infector day u with
  // probability N_u w(s-u) / D_s.
  std::vector<std::vector<double>> replicates(s.size());
  std::vector<double> assigned(s.size());
  for (int rep = 0; rep < n_resamples; ++rep) {
    std::fill(assigned.begin(), assigned.end(), 0.0);
    for (std::size_t day = 1; day < s.size(); ++day) {
      if (s[day] == 0 || !(d[day] > 0.0)) continue;
      std::int64_t remaining = s[day];
      double mass_left = d[day];
      const std::size_t first = day > k ? day - k : 0;
      for (std::size_t u = first; u < day && remaining > 0; ++u) {
        const double mass = static_cast<double>(s[u]) * g.at_lag(static_cast<long>(day - u));
        if (mass <= 0.0) continue;
        const double p = std::min(1.0, mass / mass_left);
        std::int64_t take = remaining;
        if (p < 1.0) {
          std::binomial_distribution<std::int64_t> pick(remaining, p);
          take = pick(rng);
        }
        assigned[u] += static_cast<double>(take);
        remaining -= take;
        mass_left -= mass;
      }
    }
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t] > 0) replicates[t].push_back(assigned[t] / static_cast<double>(s[t]));
    }
  }
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (replicates[t].empty()) continue;
    traj.r_low[t] = std::min(percentile(replicates[t], 0.025), traj.r_mean[t]);
    traj.r_high[t] = std::max(percentile(replicates[t], 0.975), traj.r_mean[t]);
  }
  return out;
}

TrajectorySummary time_average(const RTrajectory& t) {
  TrajectorySummary out;
  if (t.size() == 0) return out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    out.r_mean += t.r_mean[k];
    out.r_low += t.r_low[k];
    out.r_high += t.r_high[k];
  }
  const auto n = static_cast<double>(t.size());
  out.r_mean /= n;
  out.r_low /= n;
  out.r_high /= n;
  return out;
}

TrajectorySummary case_weighted_mean(const RTrajectory& t, const IncidenceSeries& incidence, bool skip_censored) {
  TrajectorySummary out;
  double weight = 0.0;
  const int offset = t.start_date - incidence.start_date();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (skip_censored && k < t.censored.size() && t.censored[k]) continue;
    const long idx = static_cast<long>(k) + offset;
    if (idx < 0 || idx >= static_cast<long>(incidence.size())) continue;
    const auto w = static_cast<double>(incidence[static_cast<std::size_t>(idx)]);
    out.r_mean += w * t.r_mean[k];
    out.r_low += w * t.r_low[k];
    out.r_high += w * t.r_high[k];
    weight += w;
  }
  if (weight > 0) {
    out.r_mean /= weight;
    out.r_low /= weight;
    out.r_high /= weight;
  }
  return out;
}

}  // namespace repronum
