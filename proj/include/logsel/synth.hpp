#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logsel/calendar.hpp"
#include "logsel/eval.hpp"
#include "logsel/ingest.hpp"

namespace logsel {

enum class FaultKind { Gradual, Sudden };

const char* to_string(FaultKind kind);
FaultKind fault_kind_from(std::string_view text);

// Scenario generator settings. One wear fault per machine; the fault robot
// alternates with the machine index. fault_day and lead_days are offsets in
// days from start_day.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  int n_machines = 1;
  int days = 120;
  int positions = 3;
  int n_codes = 300;
  int n_relevant = 10;
  FaultKind fault_kind = FaultKind::Gradual;
  int fault_day = 100;
  int lead_days = 10;
  double noise_rate = 0.5;  // baseline triggers per code per day
  std::string machine_prefix = "M";
  Day start_day = days_from_civil(2020, 1, 1);
};

struct GroundTruth {
  std::vector<std::string> relevant_codes;  // sorted
  std::vector<FaultLabel> labels;           // one per machine
};

// Generate a fleet where every machine has spec.fault_kind.
std::pair<Dataset, GroundTruth> generate(const ScenarioSpec& spec);

// Generate a mixed fleet; kinds.size() overrides spec.n_machines.
std::pair<Dataset, GroundTruth> generate_fleet(const ScenarioSpec& spec,
                                               const std::vector<FaultKind>& kinds);

void write_ground_truth_json(const GroundTruth& truth, const std::string& path);

}  // namespace logsel
