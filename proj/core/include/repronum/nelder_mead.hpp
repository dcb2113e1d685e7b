#pragma once

#include <functional>
#include <vector>

namespace repronum {

struct NelderMeadOptions {
  // Stop when the largest vertex distance from the best vertex falls below this.
  double diameter_tolerance = 1e-7;
  int max_evaluations = 5000;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Derivative-free simplex minimization with the standard reflection (1),
// expansion (2), contraction (1/2) and shrink (1/2) coefficients.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace repronum
