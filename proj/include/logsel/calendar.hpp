#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace logsel {

// Naive local time, no timezone handling. Days are counted from 1970-01-01.
using Day = std::int32_t;
using Timestamp = std::int64_t;  // seconds since 1970-01-01 00:00:00

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Inclusive calendar-day range.
struct DayRange {
  Day first = 0;
  Day last = 0;

  constexpr std::int64_t length() const { return std::int64_t(last) - first + 1; }
  constexpr bool contains(Day d) const { return d >= first && d <= last; }
  friend constexpr bool operator==(const DayRange&, const DayRange&) = default;
};

constexpr Day day_of(Timestamp ts) {
  std::int64_t d = ts / kSecondsPerDay;
  if (ts % kSecondsPerDay < 0) --d;
  return static_cast<Day>(d);
}

constexpr Timestamp start_of_day(Day d) { return Timestamp(d) * kSecondsPerDay; }

// Proleptic Gregorian conversions (Hinnant's civil-days algorithms).
Day days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(Day z, int& year, unsigned& month, unsigned& day);

// Strict "YYYY-MM-DD HH:MM:SS" / "YYYY-MM-DD". Parse failures return nullopt;
// the throwing forms raise BadTimestampError.
std::optional<Timestamp> try_parse_timestamp(std::string_view text);
std::optional<Day> try_parse_day(std::string_view text);
Timestamp parse_timestamp(std::string_view text);
Day parse_day(std::string_view text);

std::string format_timestamp(Timestamp ts);
std::string format_day(Day day);

}  // namespace logsel
