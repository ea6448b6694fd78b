#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logsel/calendar.hpp"
#include "logsel/ingest.hpp"

namespace logsel {

// Dense daily count series for one (machine, code) pair: one entry per day of
// the span, zero on days without triggers.
struct EventSeries {
  std::string machine;
  std::string code;
  DayRange span{0, 0};
  std::vector<std::int64_t> counts;

  Day day_at(std::size_t i) const { return span.first + static_cast<Day>(i); }
};

struct Sample {
  Timestamp ts = 0;
  double value = 0.0;
};

// Irregularly sampled position series for one (robot, position) pair,
// nondecreasing in time; duplicate timestamps keep input order.
struct SensorSeries {
  Robot robot = Robot::Load;
  int position = 0;
  std::vector<Sample> samples;
};

// One dense series per code observed for the machine within the span, sorted
// lexicographically by code. Records outside the span are ignored.
std::vector<EventSeries> vectorize_events(const Dataset& dataset, const std::string& machine,
                                          DayRange span);

// One series per position present for the robot, sorted by position index.
std::vector<SensorSeries> group_sensors(const Dataset& dataset, Robot robot);

void write_event_series_csv(const std::filesystem::path& path,
                            const std::vector<EventSeries>& series);

}  // namespace logsel
