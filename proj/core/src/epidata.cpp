#include "repronum/epidata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "repronum/error.hpp"

namespace repronum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.emplace_back(trim(cur));
  return fields;
}

std::int64_t parse_count(const std::string& text, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || v < 0) {
    throw Error(ErrorCode::kMalformedRow,
                "line " + std::to_string(line_no) + ": bad count '" + text + "'");
  }
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

struct Row {
  Date date;
  std::int64_t confirmed, recovered, deaths;
};

}  // namespace

IncidenceSeries::IncidenceSeries(std::string region, Date start_date, std::vector<std::int64_t> counts)
    : region_(std::move(region)), start_date_(start_date), counts_(std::move(counts)) {
  for (auto c : counts_) {
    if (c < 0) throw Error(ErrorCode::kInvalidArgument, "incidence counts must be non-negative");
  }
}

std::int64_t IncidenceSeries::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

RegionTable load_region_table(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"region", "population", "tests_per_million"}) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": expected header region,population,tests_per_million");
  }
  RegionTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 3) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    RegionMeta meta;
    meta.population = parse_count(f[1], line_no);
    if (meta.population <= 0) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": population must be positive");
    }
    if (!f[2].empty()) {
      try {
        std::size_t used = 0;
        double v = std::stod(f[2], &used);
        if (used != f[2].size() || v < 0) throw std::invalid_argument("tests");
        meta.tests_per_million = v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": bad tests_per_million");
      }
    }
    table[f[0]] = meta;
  }
  return table;
}

CumulativeSeries load_cumulative_csv(const std::filesystem::path& path, const std::string& region,
                                     const RegionTable* meta) {
  auto in = open_or_throw(path);
  std::string line;
  if (!std::getline(in, line) ||
      split_csv(line) != std::vector<std::string>{"date", "region", "confirmed", "recovered", "deaths"}) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": expected header date,region,confirmed,recovered,deaths");
  }

  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 5) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": expected 5 fields");
    }
    if (f[1] != region) continue;
    Date d;
    try {
      d = Date::parse(f[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": " + e.what());
    }
    rows.push_back({d, parse_count(f[2], line_no), parse_count(f[3], line_no), parse_count(f[4], line_no)});
  }
  if (rows.empty()) throw Error(ErrorCode::kMissingRegion, "region '" + region + "' not in " + path.string());

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw Error(ErrorCode::kNonMonotonicDates, "duplicate date " + rows[i].date.iso());
    }
  }

  CumulativeSeries out;
  out.region = region;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      // Gap fill: carry the previous cumulative values forward.
      for (Date d = rows[i - 1].date + 1; d < rows[i].date; d = d + 1) {
        out.dates.push_back(d);
        out.confirmed.push_back(out.confirmed.back());
        out.recovered.push_back(out.recovered.back());
        out.deaths.push_back(out.deaths.back());
      }
    }
    out.dates.push_back(rows[i].date);
    out.confirmed.push_back(rows[i].confirmed);
    out.recovered.push_back(rows[i].recovered);
    out.deaths.push_back(rows[i].deaths);
  }

  RegionTable sibling;
  if (meta == nullptr) {
    auto candidate = path.parent_path() / "regions.csv";
    if (std::filesystem::exists(candidate)) {
      sibling = load_region_table(candidate);
      meta = &sibling;
    }
  }
  if (meta != nullptr) {
    if (auto it = meta->find(region); it != meta->end()) {
      out.population = it->second.population;
      out.tests_per_million = it->second.tests_per_million;
    }
  }
  return out;
}

DailyIncidence to_daily_incidence(const CumulativeSeries& c) {
  if (c.size() < 2) throw Error(ErrorCode::kTooShort, "need at least 2 days of cumulative data");
  std::vector<std::int64_t> counts(c.size());
  std::vector<std::string> warnings;
  counts[0] = c.confirmed[0];
  for (std::size_t t = 1; t < c.size(); ++t) {
    std::int64_t diff = c.confirmed[t] - c.confirmed[t - 1];
    if (diff < 0) {
      std::ostringstream msg;
      msg << c.region << " " << c.dates[t].iso() << ": cumulative count fell by " << -diff
          << ", daily incidence clamped to 0";
      warnings.push_back(msg.str());
      diff = 0;
    }
    counts[t] = diff;
  }
  return {IncidenceSeries(c.region, c.dates.front(), std::move(counts)), std::move(warnings)};
}

IncidenceSeries window(const IncidenceSeries& s, std::size_t begin, std::size_t end) {
  if (s.size() == 0 || begin >= end || end > s.last()) {
    throw Error(ErrorCode::kBadWindow, "window [" + std::to_string(begin) + ", " + std::to_string(end) +
                                           "] invalid for series of length " + std::to_string(s.size()));
  }
  std::vector<std::int64_t> counts(s.counts().begin() + static_cast<std::ptrdiff_t>(begin),
                                   s.counts().begin() + static_cast<std::ptrdiff_t>(end) + 1);
  return IncidenceSeries(s.region(), s.date_at(begin), std::move(counts));
}

std::vector<std::int64_t> cumulative_sums(const IncidenceSeries& s) {
  std::vector<std::int64_t> out(s.size());
  std::partial_sum(s.counts().begin(), s.counts().end(), out.begin());
  return out;
}

}  // namespace repronum
