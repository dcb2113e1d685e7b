#pragma once

#include <string>
#include <vector>

#include "repronum/cli/report.hpp"

namespace repronum::cli {

// Region-by-method table of R estimates.
struct ComparisonTable {
  std::vector<Method> methods;
  std::vector<std::string> regions;
  // cells[row][col]; kMissingCell where a report lacks the method.
  std::vector<std::vector<std::string>> cells;

  std::string to_csv() const;
  std::string to_text() const;
};

inline constexpr const char* kMissingCell = "—";

// Columns follow SIR, EG, ML, TD, SB order, restricted to methods present in
// at least one report.
ComparisonTable compare(const std::vector<Report>& reports);

}  // namespace repronum::cli
