#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "logsel/knn.hpp"
#include "logsel/pipeline.hpp"

namespace logsel {

struct FaultLabel {
  std::string machine;
  Robot robot = Robot::Load;
  std::string fault_kind;  // opaque label, e.g. GF_1 / SF_1
  Day replacement_date = 0;
};

struct EvalOutcome {
  std::string machine;
  bool detected = false;
  Day top_day = 0;
  Day replacement_date = 0;
  int lead_days = 0;  // replacement_date - top_day; negative when too late
};

// A fault counts as detected when the highest-scoring day is on the
// replacement date or at most window_days earlier.
EvalOutcome judge_detection(const AnomalyResult& result, const FaultLabel& label,
                            int window_days);

struct MachineComparison {
  std::string machine;
  Robot robot = Robot::Load;
  std::string fault_kind;
  Day replacement_date = 0;
  std::size_t messages = 0;
  int raw_features = 0;
  bool raw_detected = false;
  int raw_lead_days = 0;
  int selected_features = 0;
  bool selected_detected = false;
  int selected_lead_days = 0;
  bool failed = false;
  std::string error;
};

struct ComparisonTable {
  std::vector<MachineComparison> rows;
  int raw_detected_total = 0;
  int selected_detected_total = 0;
  int evaluated = 0;  // rows that ran to completion
};

// Per labeled machine: KNN detection on the full event count matrix versus on
// the selected features, both scored over the span ending at the replacement
// date. A machine that fails (e.g. no sensor data) gets an error row and does
// not abort the others.
ComparisonTable compare_pipelines(const Dataset& dataset, const std::vector<FaultLabel>& labels,
                                  const PipelineOptions& options);

std::vector<FaultLabel> read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const std::vector<FaultLabel>& labels);

void write_comparison_csv(const std::filesystem::path& path, const ComparisonTable& table);
std::string format_comparison_text(const ComparisonTable& table);

}  // namespace logsel
