#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logsel/countmatrix.hpp"
#include "logsel/knn.hpp"
#include "logsel/redundancy.hpp"

namespace logsel {

// Settings shared across the pipeline stages. Defaults follow the reference
// experiment shape: keep the top 20% of codes by relevance, then prune
// redundant ones down to 40 features.
struct PipelineOptions {
  double fraction = 0.20;
  int target_count = 40;
  double rho = 0.8;
  int knn_k = 5;
  int window_days = 14;
  StdMode std_mode = StdMode::Sample;
  TauVariant tau = TauVariant::TauB;
  Aggregation aggregation = Aggregation::Max;
  RedundancyBasis basis = RedundancyBasis::RobustScores;
};

struct SelectionRun {
  std::vector<ScoreSeries> sensor_scores;  // aligned, one per position
  RelevanceReport report;
  SelectionResult relevance_selection;
  SelectionResult final_selection;
  std::vector<PruneDecision> decisions;
};

// Full selection for one machine and robot over the span: sensor persistence
// scores, daily-max alignment, relevance ranking, top-fraction cut, and
// redundancy pruning. The dataset must already be filtered to the machine
// (see filter_machine) when sensor records carry no machine tag of their own.
SelectionRun select_features(const Dataset& dataset, const std::string& machine, Robot robot,
                             DayRange span, const PipelineOptions& options);

// KNN anomaly scores over the count matrix of the given codes (all observed
// codes when selection is empty).
AnomalyResult detect_faults(const Dataset& dataset, const std::string& machine,
                            const std::vector<std::string>& codes, DayRange span, int k);

}  // namespace logsel
