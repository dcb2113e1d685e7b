#include <algorithm>
#include <cctype>
#include <cmath>

#include "repronum/error.hpp"
#include "repronum/restimators.hpp"

namespace repronum {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kEG: return "EG";
    case Method::kML: return "ML";
    case Method::kSB: return "SB";
    case Method::kTD: return "TD";
    case Method::kSIR: return "SIR";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Method m : {Method::kEG, Method::kML, Method::kSB, Method::kTD, Method::kSIR}) {
    if (upper == to_string(m)) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

constexpr int kMaxIterations = 100;
constexpr double kCoefficientTolerance = 1e-10;
constexpr double kZ975 = 1.959963984540054;

struct PoissonFit {
  double loglik;
  // Fisher information X' diag(mu) X for the (intercept, slope) design.
  double i00, i01, i11;
};

PoissonFit evaluate(const std::vector<double>& t, const std::vector<double>& y, double a, double b,
                    double& g0, double& g1) {
  PoissonFit out{0, 0, 0, 0};
  g0 = g1 = 0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    double eta = a + b * t[k];
    double mu = std::exp(eta);
    out.loglik += y[k] * eta - mu;
    g0 += y[k] - mu;
    g1 += (y[k] - mu) * t[k];
    out.i00 += mu;
    out.i01 += mu * t[k];
    out.i11 += mu * t[k] * t[k];
  }
  return out;
}

}  // namespace

GrowthRate fit_growth_rate(const IncidenceSeries& s) {
  if (s.size() < 5) throw Error(ErrorCode::kTooShort, "growth-rate fit needs at least 5 days");
  auto nonzero = std::count_if(s.counts().begin(), s.counts().end(), [](std::int64_t c) { return c > 0; });
  if (nonzero < 3) throw Error(ErrorCode::kDegenerate, "growth-rate fit needs at least 3 non-zero days");

  const std::size_t n = s.size();
  const double centre = 0.5 * static_cast<double>(n - 1);
  std::vector<double> t(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = static_cast<double>(k) - centre;
    y[k] = static_cast<double>(s[k]);
  }

  // Start from least squares on log(N + 0.5).
  double sum_l = 0, sum_tl = 0, sum_tt = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double l = std::log(y[k] + 0.5);
    sum_l += l;
    sum_tl += t[k] * l;
    sum_tt += t[k] * t[k];
  }
  double a = sum_l / static_cast<double>(n);
  double b = sum_tl / sum_tt;

  double g0, g1;
  PoissonFit cur = evaluate(t, y, a, b, g0, g1);
  int it = 0;
  bool converged = false;
  for (; it < kMaxIterations; ++it) {
    double det = cur.i00 * cur.i11 - cur.i01 * cur.i01;
    if (!(det > 0)) break;
    double da = (cur.i11 * g0 - cur.i01 * g1) / det;
    double db = (cur.i00 * g1 - cur.i01 * g0) / det;
    // Step halving keeps the log-likelihood from decreasing.
    double step = 1.0;
    PoissonFit next{};
    double ng0 = 0, ng1 = 0;
    for (int h = 0; h < 50; ++h, step *= 0.5) {
      next = evaluate(t, y, a + step * da, b + step * db, ng0, ng1);
      if (std::isfinite(next.loglik) && next.loglik >= cur.loglik - 1e-12 * std::abs(cur.loglik)) break;
    }
    a += step * da;
    b += step * db;
    cur = next;
    g0 = ng0;
    g1 = ng1;
    if (std::max(std::abs(step * da), std::abs(step * db)) < kCoefficientTolerance) {
      converged = true;
      ++it;
      break;
    }
  }
  if (!converged || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kNoConverge, "Poisson regression did not converge");
  }
  double det = cur.i00 * cur.i11 - cur.i01 * cur.i01;
  GrowthRate out;
  out.r = b;
  out.std_error = std::sqrt(std::max(0.0, cur.i00 / det));
  out.intercept = a - b * centre;
  out.iterations = it;
  return out;
}

REstimate estimate_eg(const IncidenceSeries& s, const GenTimeDist& g) {
  GrowthRate gr = fit_growth_rate(s);
  REstimate est;
  est.method = Method::kEG;
  est.r = growth_to_r(g, gr.r);
  est.ci_low = growth_to_r(g, gr.r - kZ975 * gr.std_error);
  est.ci_high = growth_to_r(g, gr.r + kZ975 * gr.std_error);
  est.window = {0, s.last()};
  if (!(est.r > 0) || !std::isfinite(est.r)) {
    throw Error(ErrorCode::kDegenerate, "growth rate maps to a non-positive or infinite R");
  }
  return est;
}

}  // namespace repronum
