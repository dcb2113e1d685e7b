#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repronum/epidata.hpp"
#include "repronum/gentime.hpp"

namespace repronum {

enum class Method { kEG, kML, kSB, kTD, kSIR };

std::string_view to_string(Method m);
// Case-insensitive; throws kInvalidArgument for unknown names.
Method parse_method(std::string_view name);

struct REstimate {
  Method method = Method::kML;
  double r = 1.0;
  double ci_low = 1.0;
  double ci_high = 1.0;
  std::pair<std::size_t, std::size_t> window{0, 0};
};

// Per-day R(t) with interval bands. Entry k belongs to start_date + k.
struct RTrajectory {
  Method method = Method::kSB;
  Date start_date;
  std::vector<double> r_mean;
  std::vector<double> r_low;
  std::vector<double> r_high;
  // Days whose estimate is biased by an incomplete future (TD right edge).
  std::vector<bool> censored;
  std::vector<std::string> warnings;

  std::size_t size() const { return r_mean.size(); }
};

struct GrowthRate {
  double r = 0.0;          // per day
  double std_error = 0.0;  // asymptotic standard error of r
  double intercept = 0.0;
  int iterations = 0;
};

// ---- exponential growth -------------------------------------------------

// Poisson regression of N_t on t (log link) by iteratively reweighted least
// squares. Needs >= 5 days and >= 3 non-zero days.
GrowthRate fit_growth_rate(const IncidenceSeries& s);

// R = 1 / M(-r); the interval maps r +/- 1.96 se through the same transform.
REstimate estimate_eg(const IncidenceSeries& s, const GenTimeDist& g);

// ---- maximum likelihood -------------------------------------------------

// Lambda_t = sum_{j=1..min(k,t)} w_j N_{t-j}, the infectiousness pressure on day t.
std::vector<double> infectiousness(const IncidenceSeries& s, const GenTimeDist& g);

// Poisson log-likelihood of R up to an additive constant, over days t >= 1.
double ml_log_likelihood(const IncidenceSeries& s, const GenTimeDist& g, double r);

// Closed-form MLE sum N_t / sum Lambda_t with a profile-likelihood 95% interval.
REstimate estimate_ml(const IncidenceSeries& s, const GenTimeDist& g);

// Same estimator restricted to days begin..end (inclusive), with Lambda_t still
// drawing on every earlier day of `s`. Throws kBadWindow unless begin < end <= last().
REstimate estimate_ml(const IncidenceSeries& s, const GenTimeDist& g, std::size_t begin, std::size_t end);

// ---- sequential Bayesian ------------------------------------------------

enum class SbGrowthLink {
  // lambda_t = N_{t-1} exp((R - 1) / T_g), T_g the generation-time mean.
  kMeanGenerationTime,
  // lambda_t = N_{t-1} exp(r(R)), with r(R) the growth rate at which the
  // generation-time distribution gives reproduction number R.
  kGenerationTimeMgf,
};

struct SbOptions {
  double grid_max = 10.0;
  double grid_step = 0.01;
  double floor = 0.1;  // lower bound on N_{t-1} in the Poisson mean
  SbGrowthLink link = SbGrowthLink::kGenerationTimeMgf;
};

// Discrete posterior over R on {0, step, ..., grid_max}, updated one day at a time.
class SequentialBayes {
 public:
  SequentialBayes(const GenTimeDist& g, const SbOptions& options);

  // Folds in one day's count given the previous day's count.
  void update(std::int64_t previous, std::int64_t current);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& posterior() const { return posterior_; }
  double mean() const;
  // Smallest grid value whose cumulative posterior mass reaches q.
  double quantile(double q) const;

 private:
  std::vector<double> grid_;
  std::vector<double> growth_;  // per-day multiplier on N_{t-1} for each grid point
  std::vector<double> posterior_;
  double floor_;
};

// Days 1..T of the series, starting at start_date + 1.
RTrajectory estimate_sb(const IncidenceSeries& s, const GenTimeDist& g, const SbOptions& options = {});

// ---- time-dependent (Wallinga-Teunis) -----------------------------------

struct TdResult {
  RTrajectory trajectory;
  // Days with cases but no possible infector on earlier days.
  std::vector<std::size_t> unrooted_days;
  // Cases that have at least one possible infector.
  std::int64_t reachable_cases = 0;
};

// Point estimates only: R_t = sum_{s>t} N_s w(s-t) / D_s.
std::vector<double> td_point_estimates(const IncidenceSeries& s, const GenTimeDist& g);

// n_resamples == 0 skips the interval (bands equal the point estimate);
// otherwise n_resamples must be >= 100.
TdResult estimate_td(const IncidenceSeries& s, const GenTimeDist& g, int n_resamples, std::mt19937_64& rng);

// ---- trajectory summaries -----------------------------------------------

struct TrajectorySummary {
  double r_mean = 0.0;
  double r_low = 0.0;
  double r_high = 0.0;
};

// Unweighted average of each band over all days.
TrajectorySummary time_average(const RTrajectory& t);

// Averages weighted by the day's case count, matching days by date. Only days
// covered by `incidence` count, so passing a window of the series restricts the
// average to it. Censored days are skipped when skip_censored is set.
TrajectorySummary case_weighted_mean(const RTrajectory& t, const IncidenceSeries& incidence,
                                     bool skip_censored = true);

}  // namespace repronum
