#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "logsel/relevance.hpp"

namespace logsel {

// Which series the pairwise correlation is computed on.
enum class RedundancyBasis { RobustScores, RawCounts };

struct PruneDecision {
  std::string code;
  bool kept = false;
  std::string note;
};

// Greedy pass in relevance order: a code is dropped when |tau| against any
// already-kept code exceeds rho. If fewer than target_count survive, dropped
// codes are refilled in relevance order. The result preserves relevance order
// and has min(target_count, |selected|) codes.
SelectionResult prune_redundant(const SelectionResult& selected,
                                const std::vector<EventSeries>& events, int target_count,
                                double rho,
                                RedundancyBasis basis = RedundancyBasis::RobustScores,
                                StdMode std_mode = StdMode::Sample,
                                TauVariant variant = TauVariant::TauB,
                                std::vector<PruneDecision>* decisions = nullptr);

void write_prune_decisions_csv(const std::filesystem::path& path,
                               const std::vector<PruneDecision>& decisions);

}  // namespace logsel
