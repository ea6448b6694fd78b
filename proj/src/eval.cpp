#include "logsel/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

EvalOutcome judge_detection(const AnomalyResult& result, const FaultLabel& label,
                            int window_days) {
  if (window_days < 0) throw Error("window_days must be >= 0");
  if (result.days.empty() ||
      label.replacement_date < result.days.front() ||
      label.replacement_date > result.days.back()) {
    throw DateOutOfRangeError("replacement " + format_day(label.replacement_date) +
                              " not covered by the scored days");
  }

  EvalOutcome outcome;
  outcome.machine = label.machine;
  outcome.top_day = result.top_day;
  outcome.replacement_date = label.replacement_date;
  outcome.lead_days = static_cast<int>(label.replacement_date - result.top_day);
  outcome.detected = outcome.lead_days >= 0 && outcome.lead_days <= window_days;
  return outcome;
}

ComparisonTable compare_pipelines(const Dataset& dataset, const std::vector<FaultLabel>& labels,
                                  const PipelineOptions& options) {
  if (labels.empty()) throw Error("no labeled machines to evaluate");

  ComparisonTable table;
  for (const auto& label : labels) {
    MachineComparison row;
    row.machine = label.machine;
    row.robot = label.robot;
    row.fault_kind = label.fault_kind;
    row.replacement_date = label.replacement_date;
    try {
      const Dataset sub = filter_machine(dataset, label.machine);
      row.messages = sub.logs.size();
      // Scores are taken over the span ending at the replacement date;
      // post-replacement days would be quiet by construction.
      const DayRange span{sub.span.first, label.replacement_date};
      if (span.first > span.last) {
        throw DateOutOfRangeError("replacement " + format_day(label.replacement_date) +
                                  " precedes the first day of data");
      }

      const auto events = vectorize_events(sub, label.machine, span);
      row.raw_features = static_cast<int>(events.size());
      const auto raw_result = knn_scores(build_count_matrix(events, select_all(events), span),
                                         options.knn_k);
      const auto raw_outcome = judge_detection(raw_result, label, options.window_days);
      row.raw_detected = raw_outcome.detected;
      row.raw_lead_days = raw_outcome.lead_days;

      const auto selection = select_features(sub, label.machine, label.robot, span, options);
      row.selected_features = static_cast<int>(selection.final_selection.selected.size());
      const auto selected_result =
          knn_scores(build_count_matrix(events, selection.final_selection, span), options.knn_k);
      const auto selected_outcome = judge_detection(selected_result, label, options.window_days);
      row.selected_detected = selected_outcome.detected;
      row.selected_lead_days = selected_outcome.lead_days;

      ++table.evaluated;
      table.raw_detected_total += row.raw_detected ? 1 : 0;
      table.selected_detected_total += row.selected_detected ? 1 : 0;
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<FaultLabel> read_labels_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  const int c_machine = reader.column("machine") >= 0 ? reader.column("machine")
                                                      : reader.column("Machine");
  const int c_robot = reader.column("robot") >= 0 ? reader.column("robot")
                                                  : reader.column("Robot");
  const int c_fault = reader.column("fault_kind") >= 0 ? reader.column("fault_kind")
                                                       : reader.column("Fault");
  const int c_date = reader.column("replacement_date") >= 0 ? reader.column("replacement_date")
                                                            : reader.column("Replacement");
  if (c_machine < 0) throw MissingColumnError("machine");
  if (c_robot < 0) throw MissingColumnError("robot");
  if (c_fault < 0) throw MissingColumnError("fault_kind");
  if (c_date < 0) throw MissingColumnError("replacement_date");

  std::vector<FaultLabel> labels;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::size_t record = reader.record_number();
    const std::size_t width = static_cast<std::size_t>(
        std::max({c_machine, c_robot, c_fault, c_date})) + 1;
    if (fields.size() < width) throw BadValueError(record, "row has too few fields");
    FaultLabel label;
    label.machine = fields[static_cast<std::size_t>(c_machine)];
    if (!robot_from(fields[static_cast<std::size_t>(c_robot)], label.robot)) {
      throw BadValueError(record, fields[static_cast<std::size_t>(c_robot)]);
    }
    label.fault_kind = fields[static_cast<std::size_t>(c_fault)];
    const auto day = try_parse_day(fields[static_cast<std::size_t>(c_date)]);
    if (!day) throw BadTimestampError(record, fields[static_cast<std::size_t>(c_date)]);
    label.replacement_date = *day;
    labels.push_back(std::move(label));
  }
  return labels;
}

void write_labels_csv(const std::filesystem::path& path, const std::vector<FaultLabel>& labels) {
  CsvWriter writer(path);
  writer.write_record({"machine", "robot", "fault_kind", "replacement_date"});
  for (const auto& l : labels) {
    writer.write_record({l.machine, std::string(to_string(l.robot)), l.fault_kind,
                         format_day(l.replacement_date)});
  }
}

void write_comparison_csv(const std::filesystem::path& path, const ComparisonTable& table) {
  CsvWriter writer(path);
  writer.write_record({"machine", "robot", "fault_kind", "replacement", "messages", "raw_features",
                       "raw_detected", "raw_lead_days", "selected_features", "selected_detected",
                       "selected_lead_days", "error"});
  for (const auto& r : table.rows) {
    if (r.failed) {
      writer.write_record({r.machine, std::string(to_string(r.robot)), r.fault_kind,
                           format_day(r.replacement_date), std::to_string(r.messages), "", "", "",
                           "", "", "", r.error});
    } else {
      writer.write_record({r.machine, std::string(to_string(r.robot)), r.fault_kind,
                           format_day(r.replacement_date), std::to_string(r.messages),
                           std::to_string(r.raw_features), r.raw_detected ? "yes" : "no",
                           std::to_string(r.raw_lead_days), std::to_string(r.selected_features),
                           r.selected_detected ? "yes" : "no",
                           std::to_string(r.selected_lead_days), ""});
    }
  }
}

std::string format_comparison_text(const ComparisonTable& table) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-7s %-8s %-12s %10s %14s %16s\n", "Machine", "Robot",
                "Fault", "Replacement", "#Messages", "#Raw(AD)", "#Selected(AD)");
  out << line;
  for (const auto& r : table.rows) {
    if (r.failed) {
      std::snprintf(line, sizeof line, "%-10s %-7s %-8s %-12s %10zu %14s %16s  [%s]\n",
                    r.machine.c_str(), std::string(to_string(r.robot)).c_str(),
                    r.fault_kind.c_str(), format_day(r.replacement_date).c_str(), r.messages,
                    "Error", "Error", r.error.c_str());
    } else {
      char raw[32], sel[32];
      std::snprintf(raw, sizeof raw, "%d(%s)", r.raw_features, r.raw_detected ? "Yes" : "No");
      std::snprintf(sel, sizeof sel, "%d(%s)", r.selected_features,
                    r.selected_detected ? "Yes" : "No");
      std::snprintf(line, sizeof line, "%-10s %-7s %-8s %-12s %10zu %14s %16s\n",
                    r.machine.c_str(), std::string(to_string(r.robot)).c_str(),
                    r.fault_kind.c_str(), format_day(r.replacement_date).c_str(), r.messages, raw,
                    sel);
    }
    out << line;
  }
  std::snprintf(line, sizeof line,
                "detected: raw %d/%d, selected %d/%d (%zu machines, %d evaluated)\n",
                table.raw_detected_total, table.evaluated, table.selected_detected_total,
                table.evaluated, table.rows.size(), table.evaluated);
  out << line;
  return out.str();
}

}  // namespace logsel
