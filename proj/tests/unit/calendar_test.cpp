#include <doctest.h>

#include "logsel/calendar.hpp"
#include "logsel/errors.hpp"

using namespace logsel;

TEST_CASE("civil date conversion round trips") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(1970, 1, 2) == 1);
  CHECK(days_from_civil(1969, 12, 31) == -1);
  CHECK(days_from_civil(2020, 1, 1) == 18262);

  for (Day d = -800; d <= 40000; d += 97) {
    int y = 0;
    unsigned m = 0, dd = 0;
    civil_from_days(d, y, m, dd);
    CHECK(days_from_civil(y, m, dd) == d);
  }
}

TEST_CASE("day_of floors toward negative infinity") {
  CHECK(day_of(0) == 0);
  CHECK(day_of(86399) == 0);
  CHECK(day_of(86400) == 1);
  CHECK(day_of(-1) == -1);
  CHECK(day_of(-86400) == -1);
  CHECK(day_of(-86401) == -2);
}

TEST_CASE("timestamp parsing and formatting") {
  const Timestamp ts = parse_timestamp("2020-01-01 00:00:00");
  CHECK(ts == 1577836800);
  CHECK(format_timestamp(ts) == "2020-01-01 00:00:00");

  const Timestamp noon = parse_timestamp("2021-03-04 05:06:07");
  CHECK(format_timestamp(noon) == "2021-03-04 05:06:07");
  CHECK(day_of(noon) == days_from_civil(2021, 3, 4));
}

TEST_CASE("strict timestamp format is enforced") {
  CHECK_FALSE(try_parse_timestamp("2021-3-04 05:06:07"));
  CHECK_FALSE(try_parse_timestamp("2021-03-04T05:06:07"));
  CHECK_FALSE(try_parse_timestamp("2021-03-04 05:06"));
  CHECK_FALSE(try_parse_timestamp("2021-03-04 24:00:00"));
  CHECK_FALSE(try_parse_timestamp("2021-03-04 23:60:00"));
  CHECK_FALSE(try_parse_timestamp("2021-03-04 23:00:61"));
  CHECK_FALSE(try_parse_timestamp("2021-13-01 00:00:00"));
  CHECK_FALSE(try_parse_timestamp("2021-00-10 00:00:00"));
  CHECK_FALSE(try_parse_timestamp("2021-02-30 00:00:00"));
  CHECK_FALSE(try_parse_timestamp(""));
  CHECK_FALSE(try_parse_timestamp("garbage"));
  CHECK_THROWS_AS(parse_timestamp("nope"), BadTimestampError);
}

TEST_CASE("leap years") {
  CHECK(try_parse_day("2020-02-29"));
  CHECK(try_parse_day("2000-02-29"));
  CHECK_FALSE(try_parse_day("2021-02-29"));
  CHECK_FALSE(try_parse_day("1900-02-29"));
}

TEST_CASE("day parsing and formatting") {
  const Day d = parse_day("2020-04-09");
  CHECK(format_day(d) == "2020-04-09");
  CHECK_FALSE(try_parse_day("2020-4-09"));
  CHECK_FALSE(try_parse_day("2020-04-09 00:00:00"));
  CHECK_THROWS_AS(parse_day("2020/04/09"), BadTimestampError);
}

TEST_CASE("day range") {
  DayRange r{10, 12};
  CHECK(r.length() == 3);
  CHECK(r.contains(10));
  CHECK(r.contains(12));
  CHECK_FALSE(r.contains(9));
  CHECK_FALSE(r.contains(13));
}
