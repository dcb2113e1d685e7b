#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace repronum {

// Calendar day. Arithmetic is in whole days.
class Date {
 public:
  Date() = default;
  explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Parses YYYY-MM-DD. Throws Error(kMalformedRow) on anything else.
  static Date parse(std::string_view iso);

  std::string iso() const;
  std::chrono::sys_days days() const { return days_; }

  Date operator+(int n) const { return Date(days_ + std::chrono::days(n)); }
  Date operator-(int n) const { return Date(days_ - std::chrono::days(n)); }
  int operator-(const Date& other) const {
    return static_cast<int>((days_ - other.days_).count());
  }

  auto operator<=>(const Date&) const = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace repronum
