#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repronum/date.hpp"

namespace repronum {

struct RegionMeta {
  std::int64_t population = 0;
  std::optional<double> tests_per_million;
};

// Keyed by region name, as read from `region,population,tests_per_million`.
using RegionTable = std::map<std::string, RegionMeta>;

// Cumulative confirmed/recovered/death counts on contiguous days.
struct CumulativeSeries {
  std::string region;
  std::vector<Date> dates;
  std::vector<std::int64_t> confirmed;
  std::vector<std::int64_t> recovered;
  std::vector<std::int64_t> deaths;
  // Unset when no metadata row exists for the region; the SIR fit requires it.
  std::optional<std::int64_t> population;
  std::optional<double> tests_per_million;

  std::size_t size() const { return dates.size(); }
  Date first_date() const { return dates.front(); }
  Date last_date() const { return dates.back(); }
};

// New cases per day. Counts are non-negative by construction.
class IncidenceSeries {
 public:
  IncidenceSeries() = default;
  IncidenceSeries(std::string region, Date start_date, std::vector<std::int64_t> counts);

  const std::string& region() const { return region_; }
  Date start_date() const { return start_date_; }
  Date date_at(std::size_t t) const { return start_date_ + static_cast<int>(t); }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t operator[](std::size_t t) const { return counts_[t]; }
  std::size_t size() const { return counts_.size(); }
  // Index of the last day, T.
  std::size_t last() const { return counts_.size() - 1; }
  std::int64_t total() const;

  bool operator==(const IncidenceSeries&) const = default;

 private:
  std::string region_;
  Date start_date_;
  std::vector<std::int64_t> counts_;
};

struct DailyIncidence {
  IncidenceSeries series;
  // One entry per clamped negative difference.
  std::vector<std::string> warnings;
};

RegionTable load_region_table(const std::filesystem::path& path);

// Reads `date,region,confirmed,recovered,deaths` rows for one region, sorts them,
// and carries cumulative values forward over missing interior days. Population is
// taken from `meta` when given, otherwise from a `regions.csv` next to the input.
CumulativeSeries load_cumulative_csv(const std::filesystem::path& path, const std::string& region,
                                     const RegionTable* meta = nullptr);

// counts[0] = confirmed[0]; counts[t] = max(0, confirmed[t] - confirmed[t-1]).
DailyIncidence to_daily_incidence(const CumulativeSeries& c);

// Inclusive sub-series [begin, end]; requires begin < end <= last().
IncidenceSeries window(const IncidenceSeries& s, std::size_t begin, std::size_t end);

std::vector<std::int64_t> cumulative_sums(const IncidenceSeries& s);

}  // namespace repronum
