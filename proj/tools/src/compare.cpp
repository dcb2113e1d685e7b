#include "repronum/cli/compare.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace repronum::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string with_interval(double mid, double lo, double hi) {
  return fmt(mid) + " [" + fmt(lo) + ", " + fmt(hi) + "]";
}

std::string cell_for(const Report& r, Method m) {
  if (m == Method::kSIR) {
    if (const auto* e = r.estimate(m)) return fmt(e->r);
    return kMissingCell;
  }
  if (const auto* e = r.estimate(m)) return with_interval(e->r, e->ci_low, e->ci_high);
  if (const auto* t = r.trajectory(m)) return with_interval(t->summary.r_mean, t->summary.r_low, t->summary.r_high);
  return kMissingCell;
}

// Display width in code points; cells are ASCII apart from the dash.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

ComparisonTable compare(const std::vector<Report>& reports) {
  ComparisonTable table;
  for (Method m : {Method::kSIR, Method::kEG, Method::kML, Method::kTD, Method::kSB}) {
    bool present = std::any_of(reports.begin(), reports.end(),
                               [m](const Report& r) { return r.estimate(m) || r.trajectory(m); });
    if (present) table.methods.push_back(m);
  }
  for (const auto& r : reports) {
    table.regions.push_back(r.region);
    std::vector<std::string> row;
    for (Method m : table.methods) row.push_back(cell_for(r, m));
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::string ComparisonTable::to_csv() const {
  std::ostringstream out;
  out << "region";
  for (Method m : methods) out << ',' << to_string(m);
  out << '\n';
  for (std::size_t row = 0; row < regions.size(); ++row) {
    out << csv_escape(regions[row]);
    for (const auto& c : cells[row]) out << ',' << csv_escape(c);
    out << '\n';
  }
  return out.str();
}

std::string ComparisonTable::to_text() const {
  std::vector<std::string> header{"Region"};
  for (Method m : methods) header.emplace_back(to_string(m));
  std::vector<std::vector<std::string>> rows{header};
  for (std::size_t row = 0; row < regions.size(); ++row) {
    std::vector<std::string> line{regions[row]};
    line.insert(line.end(), cells[row].begin(), cells[row].end());
    rows.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display_width(r[c]));
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << r[c];
      if (c + 1 < r.size()) out << std::string(width[c] - display_width(r[c]) + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace repronum::cli
