#include <algorithm>
#include <cmath>
#include <numeric>

#include "repronum/error.hpp"
#include "repronum/restimators.hpp"

namespace repronum {

namespace {

// chi-square(1) 95% quantile
constexpr double kChi2Level = 3.841458820694124;
constexpr double kBracketTolerance = 1e-6;

struct Sufficient {
  double cases = 0;     // sum of N_t over the window, t >= 1
  double pressure = 0;  // sum of Lambda_t over the same days
};

Sufficient sufficient_stats(const IncidenceSeries& s, const GenTimeDist& g, std::size_t begin, std::size_t end) {
  auto lambda = infectiousness(s, g);
  Sufficient out;
  for (std::size_t t = std::max<std::size_t>(begin, 1); t <= end; ++t) {
    out.cases += static_cast<double>(s[t]);
    out.pressure += lambda[t];
  }
  return out;
}

// Profile log-likelihood in R; constants dropped.
double reduced_loglik(const Sufficient& st, double r) {
  if (st.cases == 0) return -r * st.pressure;
  return st.cases * std::log(r) - r * st.pressure;
}

}  // namespace

std::vector<double> infectiousness(const IncidenceSeries& s, const GenTimeDist& g) {
  std::vector<double> lambda(s.size(), 0.0);
  const std::size_t k = g.max_lag();
  for (std::size_t t = 1; t < s.size(); ++t) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= std::min(k, t); ++j) acc += g.weights()[j - 1] * static_cast<double>(s[t - j]);
    lambda[t] = acc;
  }
  return lambda;
}

double ml_log_likelihood(const IncidenceSeries& s, const GenTimeDist& g, double r) {
  return reduced_loglik(sufficient_stats(s, g, 1, s.last()), r);
}

REstimate estimate_ml(const IncidenceSeries& s, const GenTimeDist& g) {
  if (s.size() < 2) throw Error(ErrorCode::kTooShort, "ML estimation needs at least 2 days");
  return estimate_ml(s, g, 0, s.last());
}

REstimate estimate_ml(const IncidenceSeries& s, const GenTimeDist& g, std::size_t begin, std::size_t end) {
  if (!(begin < end && end <= s.last())) {
    throw Error(ErrorCode::kBadWindow, "ML window must satisfy begin < end <= last day");
  }
  Sufficient st = sufficient_stats(s, g, begin, end);
  if (!(st.pressure > 0)) {
    throw Error(ErrorCode::kNoSecondaryMass, "no earlier cases can have produced the observed cases");
  }
  if (!(st.cases > 0)) throw Error(ErrorCode::kDegenerate, "no secondary cases after day 0");

  const double r_hat = st.cases / st.pressure;
  const double peak = reduced_loglik(st, r_hat);
  // Inside the interval while the deviance is below the chi-square cutoff.
  auto inside = [&](double r) { return 2.0 * (peak - reduced_loglik(st, r)) <= kChi2Level; };

  double lo = 0.0, hi = r_hat;
  while (hi - lo > kBracketTolerance) {
    double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  const double ci_low = hi;

  lo = r_hat;
  hi = 2.0 * r_hat + 1.0;
  while (inside(hi)) hi *= 2.0;
  while (hi - lo > kBracketTolerance) {
    double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }

  REstimate est;
  est.method = Method::kML;
  est.r = r_hat;
  est.ci_low = std::min(ci_low, r_hat);
  est.ci_high = std::max(lo, r_hat);
  est.window = {begin, end};
  return est;
}

}  // namespace repronum
