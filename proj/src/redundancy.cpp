#include "logsel/redundancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

SelectionResult prune_redundant(const SelectionResult& selected,
                                const std::vector<EventSeries>& events, int target_count,
                                double rho, RedundancyBasis basis, StdMode std_mode,
                                TauVariant variant, std::vector<PruneDecision>* decisions) {
  if (selected.selected.empty()) throw EmptySelectionError();
  if (target_count < 1) throw Error("target_count must be >= 1");
  if (!(rho > 0.0) || rho > 1.0) throw Error("rho must be in (0, 1]");

  std::unordered_map<std::string, const EventSeries*> by_code;
  for (const auto& e : events) by_code.emplace(e.code, &e);

  // Series the pairwise correlations run on, in relevance order.
  std::vector<std::vector<double>> basis_series;
  basis_series.reserve(selected.selected.size());
  for (const auto& code : selected.selected) {
    const auto it = by_code.find(code);
    if (it == by_code.end()) throw UnknownCodeError(code);
    const EventSeries& series = *it->second;
    if (basis == RedundancyBasis::RobustScores) {
      basis_series.push_back(robust_scores(series, std_mode).scores);
    } else {
      std::vector<double> counts(series.counts.begin(), series.counts.end());
      basis_series.push_back(std::move(counts));
    }
  }

  const std::size_t n = selected.selected.size();
  const std::size_t target = std::min<std::size_t>(static_cast<std::size_t>(target_count), n);

  std::vector<bool> kept(n, false);
  std::vector<std::string> notes(n);
  std::vector<std::size_t> kept_indices;
  for (std::size_t i = 0; i < n && kept_indices.size() < target; ++i) {
    bool redundant = false;
    for (const std::size_t j : kept_indices) {
      const double tau = kendall_tau(std::span<const double>(basis_series[i]),
                                     std::span<const double>(basis_series[j]), variant);
      if (std::abs(tau) > rho) {
        redundant = true;
        char buf[96];
        std::snprintf(buf, sizeof buf, "pruned: |tau| = %.4f vs %s", std::abs(tau),
                      selected.selected[j].c_str());
        notes[i] = buf;
        break;
      }
    }
    if (!redundant) {
      kept[i] = true;
      notes[i] = "kept";
      kept_indices.push_back(i);
    }
  }

  // Refill from the highest-relevance dropped codes until the target count.
  for (std::size_t i = 0; i < n && kept_indices.size() < target; ++i) {
    if (kept[i]) continue;
    if (notes[i].empty()) notes[i] = "kept: below greedy cutoff, refilled";
    else notes[i] = "refilled (" + notes[i] + ")";
    kept[i] = true;
    kept_indices.push_back(i);
  }

  SelectionResult result;
  result.threshold_used = rho;
  result.stage = Stage::Redundancy;
  for (std::size_t i = 0; i < n; ++i) {  // relevance order
    if (kept[i]) result.selected.push_back(selected.selected[i]);
  }

  if (decisions) {
    decisions->clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (notes[i].empty()) notes[i] = "dropped: target count reached";
      decisions->push_back(PruneDecision{selected.selected[i], kept[i], notes[i]});
    }
  }
  return result;
}

void write_prune_decisions_csv(const std::filesystem::path& path,
                               const std::vector<PruneDecision>& decisions) {
  CsvWriter writer(path);
  writer.write_record({"code", "kept", "note"});
  for (const auto& d : decisions) {
    writer.write_record({d.code, d.kept ? "true" : "false", d.note});
  }
}

}  // namespace logsel
