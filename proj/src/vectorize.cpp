#include "logsel/vectorize.hpp"

#include <algorithm>
#include <map>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

std::vector<EventSeries> vectorize_events(const Dataset& dataset, const std::string& machine,
                                          DayRange span) {
  if (span.first > span.last) throw SpanMismatchError("span is empty");

  // std::map keeps codes in lexicographic order.
  std::map<std::string, std::vector<std::int64_t>> counts;
  const std::size_t n_days = static_cast<std::size_t>(span.length());
  for (const auto& r : dataset.logs) {
    if (r.machine != machine) continue;
    const Day d = day_of(r.ts);
    if (!span.contains(d)) continue;
    auto [it, inserted] = counts.try_emplace(r.code);
    if (inserted) it->second.assign(n_days, 0);
    ++it->second[static_cast<std::size_t>(d - span.first)];
  }
  if (counts.empty()) throw NoRecordsForMachineError(machine);

  std::vector<EventSeries> series;
  series.reserve(counts.size());
  for (auto& [code, values] : counts) {
    series.push_back(EventSeries{machine, code, span, std::move(values)});
  }
  return series;
}

std::vector<SensorSeries> group_sensors(const Dataset& dataset, Robot robot) {
  std::map<int, std::vector<Sample>> by_position;
  for (const auto& r : dataset.sensors) {
    if (r.robot != robot) continue;
    by_position[r.position].push_back(Sample{r.ts, r.value});
  }
  if (by_position.empty()) {
    throw NoSensorDataError("no records for robot " + std::string(to_string(robot)));
  }

  std::vector<SensorSeries> series;
  series.reserve(by_position.size());
  for (auto& [position, samples] : by_position) {
    // stable: records sharing a timestamp keep their input order
    std::stable_sort(samples.begin(), samples.end(),
                     [](const Sample& a, const Sample& b) { return a.ts < b.ts; });
    series.push_back(SensorSeries{robot, position, std::move(samples)});
  }
  return series;
}

void write_event_series_csv(const std::filesystem::path& path,
                            const std::vector<EventSeries>& series) {
  CsvWriter writer(path);
  writer.write_record({"machine", "code", "day", "count"});
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      writer.write_record(
          {s.machine, s.code, format_day(s.day_at(i)), std::to_string(s.counts[i])});
    }
  }
}

}  // namespace logsel
