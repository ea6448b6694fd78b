#pragma once

#include <filesystem>
#include <vector>

#include "logsel/calendar.hpp"
#include "logsel/vectorize.hpp"

namespace logsel {

struct ScorePoint {
  Timestamp ts = 0;
  double score = 0.0;
};

// Irregular anomaly scores mirroring the source series' timestamps.
struct RawScoreSeries {
  std::vector<ScorePoint> points;
};

// Calendar-aligned scores: one nonnegative value per day of the span.
struct ScoreSeries {
  DayRange span{0, 0};
  std::vector<double> scores;
};

enum class StdMode { Sample, Population };

// Persistence checking: each sample is scored by its absolute difference from
// the previous sample. The first sample scores 0 so lengths stay stable.
RawScoreSeries persistence_scores(const SensorSeries& series);

// |count - median| / std over all counts of the series. A flat series
// (std = 0) scores 0 everywhere.
ScoreSeries robust_scores(const EventSeries& series, StdMode mode = StdMode::Sample);

// Collapses irregular scores to one value per day: the per-day maximum, zero
// on days without points. Points outside the span are ignored.
ScoreSeries align_daily_max(const RawScoreSeries& raw, DayRange span);

void write_score_series_csv(const std::filesystem::path& path, const ScoreSeries& series);

double median(std::vector<double> values);
double standard_deviation(const std::vector<double>& values, StdMode mode);

}  // namespace logsel
