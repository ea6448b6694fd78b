#include "logsel/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  double med = values[mid];
  if (n % 2 == 0) {
    const auto lower = std::max_element(values.begin(),
                                        values.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (med + *lower);
  }
  return med;
}

double standard_deviation(const std::vector<double>& values, StdMode mode) {
  const std::size_t n = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double divisor =
      mode == StdMode::Sample ? static_cast<double>(n - 1) : static_cast<double>(n);
  return std::sqrt(ss / divisor);
}

RawScoreSeries persistence_scores(const SensorSeries& series) {
  const auto& samples = series.samples;
  if (samples.size() < 2) {
    throw TooShortError("persistence_scores", samples.size(), 2);
  }
  RawScoreSeries out;
  out.points.reserve(samples.size());
  out.points.push_back(ScorePoint{samples.front().ts, 0.0});
  for (std::size_t i = 1; i < samples.size(); ++i) {
    out.points.push_back(
        ScorePoint{samples[i].ts, std::abs(samples[i].value - samples[i - 1].value)});
  }
  return out;
}

ScoreSeries robust_scores(const EventSeries& series, StdMode mode) {
  const std::size_t n = series.counts.size();
  if (n < 2) throw TooShortError("robust_scores", n, 2);

  std::vector<double> values(n);
  std::transform(series.counts.begin(), series.counts.end(), values.begin(),
                 [](std::int64_t c) { return static_cast<double>(c); });
  const double med = median(values);
  const double sd = standard_deviation(values, mode);

  ScoreSeries out;
  out.span = series.span;
  out.scores.resize(n, 0.0);
  if (sd == 0.0) return out;  // flat series carries no anomaly signal
  for (std::size_t i = 0; i < n; ++i) {
    out.scores[i] = std::abs(values[i] - med) / sd;
  }
  return out;
}

ScoreSeries align_daily_max(const RawScoreSeries& raw, DayRange span) {
  if (span.first > span.last) throw SpanMismatchError("span is empty");
  ScoreSeries out;
  out.span = span;
  out.scores.assign(static_cast<std::size_t>(span.length()), 0.0);
  for (const auto& p : raw.points) {
    const Day d = day_of(p.ts);
    if (!span.contains(d)) continue;
    auto& slot = out.scores[static_cast<std::size_t>(d - span.first)];
    slot = std::max(slot, p.score);
  }
  return out;
}

void write_score_series_csv(const std::filesystem::path& path, const ScoreSeries& series) {
  CsvWriter writer(path);
  writer.write_record({"day", "score"});
  char buf[64];
  for (std::size_t i = 0; i < series.scores.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", series.scores[i]);
    writer.write_record({format_day(series.span.first + static_cast<Day>(i)), buf});
  }
}

}  // namespace logsel
