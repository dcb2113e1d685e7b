#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "repronum/date.hpp"
#include "repronum/restimators.hpp"
#include "repronum/sir.hpp"

namespace repronum::cli {

struct DataSummary {
  Date first_date;
  Date last_date;
  std::size_t days = 0;
  std::int64_t total_confirmed = 0;
  std::int64_t total_recovered = 0;
  std::int64_t total_deaths = 0;
  std::int64_t incidence_total = 0;
  std::optional<std::int64_t> population;
  std::optional<double> tests_per_million;
};

struct Warning {
  std::string code;    // ErrorCode name or a soft-warning tag
  std::string source;  // module or method that raised it
  std::string message;

  bool operator==(const Warning&) const = default;
};

struct TrajectoryReport {
  RTrajectory trajectory;
  TrajectorySummary summary;
  std::string csv_file;  // empty when CSV output is off
};

struct Report {
  std::string region;
  DataSummary data;
  std::pair<std::size_t, std::size_t> window{0, 0};
  std::vector<REstimate> estimates;
  std::vector<TrajectoryReport> trajectories;
  std::optional<sir::Forecast> forecast;
  std::vector<Warning> warnings;

  const REstimate* estimate(Method m) const;
  const TrajectoryReport* trajectory(Method m) const;
};

nlohmann::json to_json(const REstimate& e);
nlohmann::json to_json(const sir::Forecast& f);
nlohmann::json to_json(const Report& r);

// Reads back what to_json(Report) wrote. Per-day trajectory values are not
// part of the JSON, so restored trajectories carry only their summary.
Report report_from_json(const nlohmann::json& j);

// `date,r_mean,r_low,r_high,censored`
void write_trajectory_csv(const RTrajectory& t, std::ostream& out);

}  // namespace repronum::cli
