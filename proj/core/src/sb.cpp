#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "repronum/error.hpp"
#include "repronum/restimators.hpp"

namespace repronum {

SequentialBayes::SequentialBayes(const GenTimeDist& g, const SbOptions& options) : floor_(options.floor) {
  if (!(options.grid_max > 1.0) || !(options.grid_step > 0.0) || options.grid_step > 0.05 ||
      !std::isfinite(options.grid_max)) {
    throw Error(ErrorCode::kBadGrid, "need grid_max > 1 and 0 < grid_step <= 0.05");
  }
  if (!(options.floor > 0.0)) throw Error(ErrorCode::kBadGrid, "Poisson-mean floor must be positive");

  const auto points = static_cast<std::size_t>(std::floor(options.grid_max / options.grid_step + 1e-9)) + 1;
  grid_.resize(points);
  growth_.resize(points);
  for (std::size_t m = 0; m < points; ++m) {
    const double r = static_cast<double>(m) * options.grid_step;
    grid_[m] = r;
    if (options.link == SbGrowthLink::kMeanGenerationTime) {
      growth_[m] = std::exp((r - 1.0) / g.mean_days());
    } else {
      growth_[m] = r > 0.0 ? std::exp(r_to_growth(g, r)) : 0.0;
    }
  }
  posterior_.assign(points, 1.0 / static_cast<double>(points));
}

void SequentialBayes::update(std::int64_t previous, std::int64_t current) {
  const double base = std::max(static_cast<double>(previous), floor_);
  const auto n = static_cast<double>(current);
  std::vector<double> log_post(grid_.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < grid_.size(); ++m) {
    const double lambda = base * growth_[m];
    double loglik;
    if (lambda > 0.0) {
      loglik = n * std::log(lambda) - lambda;
    } else {
      loglik = current == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    log_post[m] = posterior_[m] > 0.0 ? std::log(posterior_[m]) + loglik : -std::numeric_limits<double>::infinity();
    top = std::max(top, log_post[m]);
  }
  if (!std::isfinite(top)) {
    throw Error(ErrorCode::kDegenerate, "posterior has no support for the observed count");
  }
  double total = 0.0;
  for (std::size_t m = 0; m < grid_.size(); ++m) {
    posterior_[m] = std::exp(log_post[m] - top);
    total += posterior_[m];
  }
  for (double& p : posterior_) p /= total;
}

double SequentialBayes::mean() const {
  return std::inner_product(grid_.begin(), grid_.end(), posterior_.begin(), 0.0);
}

double SequentialBayes::quantile(double q) const {
  double acc = 0.0;
  for (std::size_t m = 0; m < grid_.size(); ++m) {
    acc += posterior_[m];
    if (acc >= q) return grid_[m];
  }
  return grid_.back();
}

RTrajectory estimate_sb(const IncidenceSeries& s, const GenTimeDist& g, const SbOptions& options) {
  if (s.size() < 2) throw Error(ErrorCode::kTooShort, "sequential Bayes needs at least 2 days");
  SequentialBayes sb(g, options);
  RTrajectory out;
  out.method = Method::kSB;
  out.start_date = s.start_date() + 1;
  for (std::size_t t = 1; t < s.size(); ++t) {
    sb.update(s[t - 1], s[t]);
    const double mean = sb.mean();
    out.r_mean.push_back(mean);
    out.r_low.push_back(std::min(sb.quantile(0.025), mean));
    out.r_high.push_back(std::max(sb.quantile(0.975), mean));
    out.censored.push_back(false);
  }
  return out;
}

}  // namespace repronum
