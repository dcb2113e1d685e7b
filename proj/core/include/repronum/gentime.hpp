#pragma once

#include <span>
#include <vector>

namespace repronum {

/// Discrete generation-time distribution over whole-day lags 1..k.
///
/// weights()[j - 1] is the probability that a secondary case occurs j days
/// after its infector. There is never mass at lag 0. The stored mean and sd
/// are the moments of the discrete vector, not of any continuous parent.
class GenTimeDist {
 public:
  /// Validates and stores weights for lags 1..k. Throws kInvalidDistribution
  /// if any weight is negative, the vector is empty, or the sum is off by more
  /// than 1e-9.
  explicit GenTimeDist(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  /// Weight at a lag in days; zero outside 1..k.
  double at_lag(long lag) const {
    return (lag >= 1 && lag <= static_cast<long>(weights_.size())) ? weights_[static_cast<std::size_t>(lag - 1)] : 0.0;
  }
  std::size_t max_lag() const { return weights_.size(); }
  double mean_days() const { return mean_; }
  double sd_days() const { return sd_; }

 private:
  std::vector<double> weights_;
  double mean_ = 0.0;
  double sd_ = 0.0;
};

struct GammaShapeScale {
  double shape;
  double scale;
};

/// Method-of-moments gamma parameters: shape = (mean/sd)^2, scale = sd^2/mean.
GammaShapeScale gamma_from_moments(double mean_days, double sd_days);

/// Gamma interval discretized by CDF differences on half-integer boundaries,
/// w_j = F(j + 0.5) - F(j - 0.5) for j = 1..max_lag, then renormalized.
/// Throws kInvalidMoment for non-positive moments and kTruncationLoss when more
/// than 1% of the continuous mass falls outside [0.5, max_lag + 0.5].
GenTimeDist discretize_gamma(double mean_days, double sd_days, int max_lag = 20);

/// All mass at lag `lag` (constant generation time). Throws kInvalidLag if lag < 1.
GenTimeDist point_mass(int lag);

/// Moment-generating function sum_j w_j exp(x j). Returns +inf on overflow.
double mgf_at(const GenTimeDist& g, double x);

/// Reproduction number implied by an exponential growth rate: 1 / M(-r).
double growth_to_r(const GenTimeDist& g, double growth_rate);

/// Inverse of growth_to_r. r must be positive; solved by bisection to 1e-13.
double r_to_growth(const GenTimeDist& g, double r);

}  // namespace repronum
