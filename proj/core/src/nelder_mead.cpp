#include "repronum/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace repronum {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(acc);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    double f = objective(x);
    // Non-finite values are treated as uphill so the simplex backs away from them.
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  };

  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (std::size_t k = 0; k < n; ++k) {
    auto x = start;
    x[k] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  bool converged = false;
  while (evals < options.max_evaluations) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) diameter = std::max(diameter, distance(simplex[k].x, simplex[0].x));
    if (diameter < options.diameter_tolerance) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[k].x[d] / static_cast<double>(n);
    }
    auto along = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d) x[d] = centroid[d] + coeff * (simplex[n].x[d] - centroid[d]);
      return x;
    };

    Vertex& worst = simplex[n];
    Vertex reflected{along(-1.0), 0.0};
    reflected.f = eval(reflected.x);
    if (reflected.f < simplex[0].f) {
      Vertex expanded{along(-2.0), 0.0};
      expanded.f = eval(expanded.x);
      worst = expanded.f < reflected.f ? expanded : reflected;
    } else if (reflected.f < simplex[n - 1].f) {
      worst = reflected;
    } else {
      bool outside = reflected.f < worst.f;
      Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
      contracted.f = eval(contracted.x);
      if (contracted.f < (outside ? reflected.f : worst.f)) {
        worst = contracted;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t d = 0; d < n; ++d) {
            simplex[k].x[d] = simplex[0].x[d] + 0.5 * (simplex[k].x[d] - simplex[0].x[d]);
          }
          simplex[k].f = eval(simplex[k].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex[0].x, simplex[0].f, evals, converged};
}

}  // namespace repronum
