#include "logsel/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "logsel/errors.hpp"

namespace logsel {

namespace {

// Counts pairs i < j with values[i] > values[j] (strictly) by merge sort.
// Pairs tied in value are not counted.
std::int64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch) {
  const std::size_t n = values.size();
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (values[i] <= values[j]) {
          scratch[k++] = values[i++];
        } else {
          inversions += static_cast<std::int64_t>(mid - i);
          scratch[k++] = values[j++];
        }
      }
      while (i < mid) scratch[k++] = values[i++];
      while (j < hi) scratch[k++] = values[j++];
      std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
                scratch.begin() + static_cast<std::ptrdiff_t>(hi),
                values.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inversions;
}

std::int64_t tie_pair_count(std::int64_t run) { return run * (run - 1) / 2; }

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y, TauVariant variant) {
  const std::size_t n = x.size();
  if (n != y.size()) {
    throw SpanMismatchError("kendall_tau inputs have lengths " + std::to_string(n) + " and " +
                            std::to_string(y.size()));
  }
  if (n < 2) throw TooShortError("kendall_tau", n, 2);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  // Tie pair counts: n1 over x runs, n3 over joint (x, y) runs.
  std::int64_t n1 = 0, n3 = 0;
  {
    std::int64_t x_run = 1, xy_run = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const bool same_x = x[order[i]] == x[order[i - 1]];
      const bool same_xy = same_x && y[order[i]] == y[order[i - 1]];
      if (same_x) {
        ++x_run;
      } else {
        n1 += tie_pair_count(x_run);
        x_run = 1;
      }
      if (same_xy) {
        ++xy_run;
      } else {
        n3 += tie_pair_count(xy_run);
        xy_run = 1;
      }
    }
    n1 += tie_pair_count(x_run);
    n3 += tie_pair_count(xy_run);
  }

  // Discordant pairs = inversions of y taken in (x, y) order.
  std::vector<double> y_in_x_order(n);
  for (std::size_t i = 0; i < n; ++i) y_in_x_order[i] = y[order[i]];
  std::vector<double> scratch(n);
  const std::int64_t discordant = count_inversions(y_in_x_order, scratch);

  // After the merge sort y_in_x_order is sorted; count y tie pairs from runs.
  std::int64_t n2 = 0;
  {
    std::int64_t y_run = 1;
    for (std::size_t i = 1; i < n; ++i) {
      if (y_in_x_order[i] == y_in_x_order[i - 1]) {
        ++y_run;
      } else {
        n2 += tie_pair_count(y_run);
        y_run = 1;
      }
    }
    n2 += tie_pair_count(y_run);
  }

  const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
  const std::int64_t numerator = n0 - n1 - n2 + n3 - 2 * discordant;  // = concordant - discordant

  double tau = 0.0;
  if (variant == TauVariant::TauA) {
    tau = static_cast<double>(numerator) / static_cast<double>(n0);
  } else {
    const std::int64_t dx = n0 - n1;
    const std::int64_t dy = n0 - n2;
    if (dx == 0 || dy == 0) return 0.0;  // constant series convention
    tau = static_cast<double>(numerator) /
          std::sqrt(static_cast<double>(dx) * static_cast<double>(dy));
  }
  return std::clamp(tau, -1.0, 1.0);
}

double kendall_tau(const ScoreSeries& x, const ScoreSeries& y, TauVariant variant) {
  if (!(x.span == y.span)) {
    throw SpanMismatchError("score series cover " + format_day(x.span.first) + ".." +
                            format_day(x.span.last) + " vs " + format_day(y.span.first) + ".." +
                            format_day(y.span.last));
  }
  if (x.scores.size() < 2) throw TooShortError("kendall tau", x.scores.size(), 2);
  return kendall_tau(std::span<const double>(x.scores), std::span<const double>(y.scores),
                     variant);
}

RelevanceReport score_relevance(const std::vector<EventSeries>& events,
                                const std::vector<ScoreSeries>& sensor_scores,
                                TauVariant variant, Aggregation aggregation, StdMode std_mode) {
  for (const auto& s : sensor_scores) {
    if (!(s.span == sensor_scores.front().span)) {
      throw SpanMismatchError("sensor score series disagree on span");
    }
  }

  RelevanceReport report;
  report.entries.reserve(events.size());
  for (const auto& event : events) {
    const ScoreSeries event_scores = robust_scores(event, std_mode);
    RelevanceEntry entry;
    entry.code = event.code;
    entry.taus.reserve(sensor_scores.size());
    for (const auto& sensor : sensor_scores) {
      entry.taus.push_back(kendall_tau(event_scores, sensor, variant));
    }
    if (aggregation == Aggregation::Max) {
      entry.aggregate = *std::max_element(entry.taus.begin(), entry.taus.end());
    } else {
      entry.aggregate = std::accumulate(entry.taus.begin(), entry.taus.end(), 0.0) /
                        static_cast<double>(entry.taus.size());
    }
    report.entries.push_back(std::move(entry));
  }

  std::sort(report.entries.begin(), report.entries.end(),
            [](const RelevanceEntry& a, const RelevanceEntry& b) {
              if (a.aggregate != b.aggregate) return a.aggregate > b.aggregate;
              return a.code < b.code;
            });
  return report;
}

SelectionResult select_top_fraction(const RelevanceReport& report, double fraction) {
  if (report.entries.empty()) throw EmptyReportError();
  if (!(fraction > 0.0) || fraction > 1.0) throw BadFractionError(fraction);

  const auto n = static_cast<double>(report.entries.size());
  const auto keep = std::min(report.entries.size(),
                             static_cast<std::size_t>(std::ceil(fraction * n)));

  SelectionResult result;
  result.threshold_used = fraction;
  result.stage = Stage::Relevance;
  result.selected.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) result.selected.push_back(report.entries[i].code);
  return result;
}

void write_relevance_csv(const std::filesystem::path& path, const RelevanceReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  std::size_t positions = 0;
  for (const auto& e : report.entries) positions = std::max(positions, e.taus.size());
  out << "code";
  for (std::size_t k = 1; k <= positions; ++k) out << ",tau_" << k;
  out << ",aggregate\n";
  char buf[64];
  for (const auto& e : report.entries) {
    out << e.code;
    for (double t : e.taus) {
      std::snprintf(buf, sizeof buf, "%.12g", t);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g", e.aggregate);
    out << ',' << buf << '\n';
  }
}

void write_relevance_json(const std::filesystem::path& path, const RelevanceReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"code", e.code}, {"tau", e.taus}, {"aggregate", e.aggregate}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << nlohmann::json{{"entries", entries}}.dump(2) << '\n';
}

void write_selection_json(const std::filesystem::path& path, const SelectionResult& selection) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << nlohmann::json{{"stage", selection.stage == Stage::Relevance ? "relevance" : "redundancy"},
                        {"threshold", selection.threshold_used},
                        {"selected", selection.selected}}
             .dump(2)
      << '\n';
}

SelectionResult read_selection_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  SelectionResult result;
  result.stage = j.value("stage", "relevance") == "redundancy" ? Stage::Redundancy
                                                               : Stage::Relevance;
  result.threshold_used = j.value("threshold", 0.0);
  for (const auto& code : j.at("selected")) result.selected.push_back(code.get<std::string>());
  return result;
}

}  // namespace logsel
