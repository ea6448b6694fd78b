#include "logsel/pipeline.hpp"

#include "logsel/errors.hpp"

namespace logsel {

SelectionRun select_features(const Dataset& dataset, const std::string& machine, Robot robot,
                             DayRange span, const PipelineOptions& options) {
  SelectionRun run;

  const auto sensors = group_sensors(dataset, robot);
  run.sensor_scores.reserve(sensors.size());
  for (const auto& series : sensors) {
    run.sensor_scores.push_back(align_daily_max(persistence_scores(series), span));
  }

  const auto events = vectorize_events(dataset, machine, span);
  run.report = score_relevance(events, run.sensor_scores, options.tau, options.aggregation,
                               options.std_mode);
  run.relevance_selection = select_top_fraction(run.report, options.fraction);
  run.final_selection =
      prune_redundant(run.relevance_selection, events, options.target_count, options.rho,
                      options.basis, options.std_mode, options.tau, &run.decisions);
  return run;
}

AnomalyResult detect_faults(const Dataset& dataset, const std::string& machine,
                            const std::vector<std::string>& codes, DayRange span, int k) {
  const auto events = vectorize_events(dataset, machine, span);
  SelectionResult selection;
  if (codes.empty()) {
    selection = select_all(events);
  } else {
    selection.selected = codes;
    selection.stage = Stage::Redundancy;
  }
  const auto matrix = build_count_matrix(events, selection, span);
  return knn_scores(matrix, k);
}

}  // namespace logsel
