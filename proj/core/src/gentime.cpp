#include "repronum/gentime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/gamma.hpp>

#include "repronum/error.hpp"

namespace repronum {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kMaxLostMass = 0.01;

// log M(x), stable for large |x|.
double log_mgf(std::span<const double> w, double x) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] > 0) peak = std::max(peak, std::log(w[j]) + x * static_cast<double>(j + 1));
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] > 0) acc += std::exp(std::log(w[j]) + x * static_cast<double>(j + 1) - peak);
  }
  return peak + std::log(acc);
}

}  // namespace

GenTimeDist::GenTimeDist(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kInvalidDistribution, "generation time needs at least one lag");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidDistribution, "generation-time weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::kInvalidDistribution, "generation-time weights sum to " + std::to_string(sum));
  }
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    double lag = static_cast<double>(j + 1);
    m1 += weights_[j] * lag;
    m2 += weights_[j] * lag * lag;
  }
  mean_ = m1;
  sd_ = std::sqrt(std::max(0.0, m2 - m1 * m1));
}

GammaShapeScale gamma_from_moments(double mean_days, double sd_days) {
  if (!(mean_days > 0.0) || !(sd_days > 0.0) || !std::isfinite(mean_days) || !std::isfinite(sd_days)) {
    throw Error(ErrorCode::kInvalidMoment, "gamma mean and sd must be positive and finite");
  }
  double cv = mean_days / sd_days;
  return {cv * cv, sd_days * sd_days / mean_days};
}

GenTimeDist discretize_gamma(double mean_days, double sd_days, int max_lag) {
  auto [shape, scale] = gamma_from_moments(mean_days, sd_days);
  if (max_lag < 1) throw Error(ErrorCode::kInvalidLag, "max_lag must be >= 1");

  boost::math::gamma_distribution<double> dist(shape, scale);
  std::vector<double> w(static_cast<std::size_t>(max_lag));
  double prev = boost::math::cdf(dist, 0.5);
  for (int j = 1; j <= max_lag; ++j) {
    double next = boost::math::cdf(dist, j + 0.5);
    w[static_cast<std::size_t>(j - 1)] = std::max(0.0, next - prev);
    prev = next;
  }
  double kept = std::accumulate(w.begin(), w.end(), 0.0);
  // Lost mass covers both the tail beyond max_lag and the sub-day mass below 0.5.
  if (1.0 - kept > kMaxLostMass || !(kept > 0.0)) {
    throw Error(ErrorCode::kTruncationLoss, "discretization at max_lag " + std::to_string(max_lag) + " drops " +
                                                std::to_string(100.0 * (1.0 - kept)) + "% of the mass");
  }
  for (double& x : w) x /= kept;
  return GenTimeDist(std::move(w));
}

GenTimeDist point_mass(int lag) {
  if (lag < 1) throw Error(ErrorCode::kInvalidLag, "point-mass lag must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(lag), 0.0);
  w.back() = 1.0;
  return GenTimeDist(std::move(w));
}

double mgf_at(const GenTimeDist& g, double x) {
  if (x == 0.0) return 1.0;
  double sum = 0.0;
  auto w = g.weights();
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] == 0.0) continue;
    double term = w[j] * std::exp(x * static_cast<double>(j + 1));
    if (std::isinf(term)) return std::numeric_limits<double>::infinity();
    sum += term;
  }
  return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

double growth_to_r(const GenTimeDist& g, double growth_rate) {
  return 1.0 / mgf_at(g, -growth_rate);
}

double r_to_growth(const GenTimeDist& g, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "reproduction number must be positive and finite");
  }
  if (r == 1.0) return 0.0;
  auto w = g.weights();
  const double target = std::log(r);
  // log R(x) = -log M(-x) is increasing in x.
  auto f = [&](double x) { return -log_mgf(w, -x) - target; };
  double lo = -1.0, hi = 1.0;
  while (f(lo) > 0) lo *= 2;
  while (f(hi) < 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace repronum
