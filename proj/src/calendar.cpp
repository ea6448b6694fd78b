#include "logsel/calendar.hpp"

#include <cstdio>

#include "logsel/errors.hpp"

namespace logsel {

Day days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return static_cast<Day>(era * 146097 + static_cast<int>(doe) - 719468);
}

void civil_from_days(Day z, int& y, unsigned& m, unsigned& d) {
  std::int64_t zz = std::int64_t(z) + 719468;
  const std::int64_t era = (zz >= 0 ? zz : zz - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(zz - era * 146097);          // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = std::int64_t(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);           // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                // [0, 11]
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

namespace {

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
  if (pos + len > s.size()) return false;
  unsigned value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<unsigned>(c - '0');
  }
  out = value;
  return true;
}

unsigned days_in_month(int y, unsigned m) {
  static constexpr unsigned lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2) {
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[m - 1];
}

bool parse_civil_date(std::string_view s, Day& out) {
  // "YYYY-MM-DD", exactly 10 characters when taken alone.
  unsigned y = 0, m = 0, d = 0;
  if (s.size() < 10) return false;
  if (!parse_fixed_uint(s, 0, 4, y) || s[4] != '-' || !parse_fixed_uint(s, 5, 2, m) ||
      s[7] != '-' || !parse_fixed_uint(s, 8, 2, d)) {
    return false;
  }
  if (m < 1 || m > 12) return false;
  if (d < 1 || d > days_in_month(static_cast<int>(y), m)) return false;
  out = days_from_civil(static_cast<int>(y), m, d);
  return true;
}

}  // namespace

std::optional<Timestamp> try_parse_timestamp(std::string_view text) {
  if (text.size() != 19 || text[10] != ' ') return std::nullopt;
  Day day = 0;
  if (!parse_civil_date(text.substr(0, 10), day)) return std::nullopt;
  unsigned hh = 0, mm = 0, ss = 0;
  if (!parse_fixed_uint(text, 11, 2, hh) || text[13] != ':' ||
      !parse_fixed_uint(text, 14, 2, mm) || text[16] != ':' ||
      !parse_fixed_uint(text, 17, 2, ss)) {
    return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  return start_of_day(day) + hh * 3600 + mm * 60 + ss;
}

std::optional<Day> try_parse_day(std::string_view text) {
  Day day = 0;
  if (text.size() != 10 || !parse_civil_date(text, day)) return std::nullopt;
  return day;
}

Timestamp parse_timestamp(std::string_view text) {
  if (auto ts = try_parse_timestamp(text)) return *ts;
  throw BadTimestampError(std::string(text));
}

Day parse_day(std::string_view text) {
  if (auto d = try_parse_day(text)) return *d;
  throw BadTimestampError(std::string(text));
}

std::string format_timestamp(Timestamp ts) {
  const Day day = day_of(ts);
  const std::int64_t rem = ts - start_of_day(day);
  int y = 0;
  unsigned m = 0, d = 0;
  civil_from_days(day, y, m, d);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld:%02lld", y, m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::string format_day(Day day) {
  int y = 0;
  unsigned m = 0, d = 0;
  civil_from_days(day, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
  return buf;
}

}  // namespace logsel
