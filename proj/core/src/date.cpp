#include "repronum/date.hpp"

#include <charconv>
#include <cstdio>

#include "repronum/error.hpp"

namespace repronum {

namespace {

bool parse_field(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year(year), std::chrono::month(month),
                                  std::chrono::day(day)};
  if (!ymd.ok()) {
    throw Error(ErrorCode::kMalformedRow, "invalid calendar date");
  }
  days_ = std::chrono::sys_days(ymd);
}

Date Date::parse(std::string_view iso) {
  int y = 0, m = 0, d = 0;
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !parse_field(iso.substr(0, 4), y) ||
      !parse_field(iso.substr(5, 2), m) || !parse_field(iso.substr(8, 2), d) || m < 1 || d < 1) {
    throw Error(ErrorCode::kMalformedRow, "unparseable date '" + std::string(iso) + "'");
  }
  std::chrono::year_month_day ymd{std::chrono::year(y), std::chrono::month(static_cast<unsigned>(m)),
                                  std::chrono::day(static_cast<unsigned>(d))};
  if (!ymd.ok()) {
    throw Error(ErrorCode::kMalformedRow, "invalid date '" + std::string(iso) + "'");
  }
  return Date(std::chrono::sys_days(ymd));
}

std::string Date::iso() const {
  std::chrono::year_month_day ymd(days_);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace repronum
