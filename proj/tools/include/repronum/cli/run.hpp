#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "repronum/cli/report.hpp"
#include "repronum/restimators.hpp"

namespace repronum::cli {

struct RunConfig {
  std::filesystem::path input;
  // Region metadata (`region,population,tests_per_million`). When empty, a
  // regions.csv next to the input is used if present.
  std::filesystem::path metadata;
  std::string region;
  std::vector<Method> methods;
  double gt_mean = 5.2;
  double gt_sd = 2.8;
  int gt_max_lag = 20;
  std::optional<std::size_t> begin;
  std::optional<std::size_t> end;
  std::filesystem::path out_dir = ".";
  bool write_json = true;
  bool write_csv = true;
  std::uint64_t rng_seed = 42;
  SbOptions sb;
  int resamples = 1000;
  std::optional<std::int64_t> population;
};

struct RunOutcome {
  Report report;
  // 0 when every requested method succeeded, 2 when at least one failed.
  int exit_code = 0;
  std::vector<std::filesystem::path> written;
};

// Parses a comma-separated method list such as "eg,ml,sb".
std::vector<Method> parse_methods(const std::string& list);

// Ingest, estimate each requested method on the window, forecast when SIR is
// requested, and write `<region>_report.json` plus per-trajectory CSVs.
// Ingestion and configuration errors throw; method errors land in warnings.
RunOutcome run(const RunConfig& cfg);

}  // namespace repronum::cli
