#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "logsel/detectors.hpp"
#include "logsel/vectorize.hpp"

namespace logsel {

// tau_b applies the tie correction; tau_a divides the concordant/discordant
// surplus by the total pair count. Count series are tie-heavy, so tau_b is
// the default everywhere.
enum class TauVariant { TauB, TauA };

enum class Aggregation { Max, Mean };

enum class Stage { Relevance, Redundancy };

// Kendall rank correlation in [-1, 1], O(n log n). A constant input (zero
// tie-corrected denominator) yields 0 by convention.
double kendall_tau(std::span<const double> x, std::span<const double> y,
                   TauVariant variant = TauVariant::TauB);

// Span-checked overload for aligned daily scores.
double kendall_tau(const ScoreSeries& x, const ScoreSeries& y,
                   TauVariant variant = TauVariant::TauB);

struct RelevanceEntry {
  std::string code;
  std::vector<double> taus;  // one per sensor position, in input order
  double aggregate = 0.0;
};

// Entries sorted by aggregate descending, ties by code.
struct RelevanceReport {
  std::vector<RelevanceEntry> entries;
};

struct SelectionResult {
  std::vector<std::string> selected;  // relevance order
  double threshold_used = 0.0;
  Stage stage = Stage::Relevance;
};

// Scores every event's robust-score series against each sensor score series
// and aggregates across positions (max by default).
RelevanceReport score_relevance(const std::vector<EventSeries>& events,
                                const std::vector<ScoreSeries>& sensor_scores,
                                TauVariant variant = TauVariant::TauB,
                                Aggregation aggregation = Aggregation::Max,
                                StdMode std_mode = StdMode::Sample);

// Keeps the ceil(fraction * N) highest-aggregate codes.
SelectionResult select_top_fraction(const RelevanceReport& report, double fraction);

void write_relevance_csv(const std::filesystem::path& path, const RelevanceReport& report);
void write_relevance_json(const std::filesystem::path& path, const RelevanceReport& report);
void write_selection_json(const std::filesystem::path& path, const SelectionResult& selection);
SelectionResult read_selection_json(const std::filesystem::path& path);

}  // namespace logsel
