#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "logsel/errors.hpp"
#include "logsel/eval.hpp"
#include "logsel/pipeline.hpp"
#include "logsel/synth.hpp"

namespace py = pybind11;
using namespace logsel;

namespace {

Robot robot_arg(const std::string& text) {
  Robot robot = Robot::Load;
  if (!robot_from(text, robot)) {
    throw BadSpecError("robot must be load or unload, got \"" + text + "\"");
  }
  return robot;
}

StdMode std_arg(const std::string& text) {
  if (text == "sample") return StdMode::Sample;
  if (text == "population") return StdMode::Population;
  throw BadSpecError("std must be sample or population, got \"" + text + "\"");
}

TauVariant tau_arg(const std::string& text) {
  if (text == "b") return TauVariant::TauB;
  if (text == "a") return TauVariant::TauA;
  throw BadSpecError("tau must be b or a, got \"" + text + "\"");
}

Aggregation agg_arg(const std::string& text) {
  if (text == "max") return Aggregation::Max;
  if (text == "mean") return Aggregation::Mean;
  throw BadSpecError("agg must be max or mean, got \"" + text + "\"");
}

RedundancyBasis basis_arg(const std::string& text) {
  if (text == "robust") return RedundancyBasis::RobustScores;
  if (text == "counts") return RedundancyBasis::RawCounts;
  throw BadSpecError("basis must be robust or counts, got \"" + text + "\"");
}

DayRange span_arg(const Dataset& dataset, const std::string& from, const std::string& to) {
  DayRange span = dataset.span;
  if (!from.empty()) span.first = parse_day(from);
  if (!to.empty()) span.last = parse_day(to);
  return span;
}

std::string pick_machine(const Dataset& dataset, const std::string& machine) {
  if (!machine.empty()) return machine;
  if (dataset.machines.size() == 1) return dataset.machines.front();
  throw BadSpecError("dataset has " + std::to_string(dataset.machines.size()) +
                     " machines, pass machine=");
}

PipelineOptions options_from(double fraction, int target, double rho, int k, int window,
                             const std::string& std_mode, const std::string& tau,
                             const std::string& agg, const std::string& basis) {
  PipelineOptions options;
  options.fraction = fraction;
  options.target_count = target;
  options.rho = rho;
  options.knn_k = k;
  options.window_days = window;
  options.std_mode = std_arg(std_mode);
  options.tau = tau_arg(tau);
  options.aggregation = agg_arg(agg);
  options.basis = basis_arg(basis);
  return options;
}

py::dict truth_dict(const GroundTruth& truth) {
  py::list labels;
  for (const auto& label : truth.labels) {
    py::dict row;
    row["machine"] = label.machine;
    row["robot"] = std::string(to_string(label.robot));
    row["fault_kind"] = label.fault_kind;
    row["replacement_date"] = format_day(label.replacement_date);
    labels.append(row);
  }
  py::dict out;
  out["relevant_codes"] = truth.relevant_codes;
  out["labels"] = labels;
  return out;
}

std::vector<FaultLabel> labels_from(const py::iterable& rows) {
  std::vector<FaultLabel> labels;
  for (const auto& item : rows) {
    const auto row = item.cast<py::dict>();
    FaultLabel label;
    label.machine = row["machine"].cast<std::string>();
    label.robot = robot_arg(row.contains("robot") ? row["robot"].cast<std::string>() : "load");
    if (row.contains("fault_kind")) label.fault_kind = row["fault_kind"].cast<std::string>();
    label.replacement_date = parse_day(row["replacement_date"].cast<std::string>());
    labels.push_back(std::move(label));
  }
  return labels;
}

}  // namespace

PYBIND11_MODULE(_logsel, m) {
  m.doc() = "log event feature selection for fault detection";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "LogselError", PyExc_ValueError);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("machines",
                             [](const Dataset& d) { return d.machines; })
      .def_property_readonly("n_log_records",
                             [](const Dataset& d) { return d.logs.size(); })
      .def_property_readonly("n_sensor_records",
                             [](const Dataset& d) { return d.sensors.size(); })
      .def_property_readonly("span",
                             [](const Dataset& d) {
                               return py::make_tuple(format_day(d.span.first),
                                                     format_day(d.span.last));
                             })
      .def("__repr__", [](const Dataset& d) {
        return "<Dataset: " + std::to_string(d.machines.size()) + " machines, " +
               std::to_string(d.logs.size()) + " log records, " +
               std::to_string(d.sensors.size()) + " sensor records>";
      });

  m.def(
      "read_dataset",
      [](const std::string& logs, const std::string& sensors, bool strict) {
        auto log_result = read_log_csv(logs, {}, strict);
        std::vector<SensorRecord> sensor_records;
        if (!sensors.empty()) {
          sensor_records = read_sensor_csv(sensors, {}, 0, strict).records;
        }
        return build_dataset(std::move(log_result.records), std::move(sensor_records));
      },
      py::arg("logs"), py::arg("sensors") = std::string(), py::arg("strict") = false,
      "Read log and sensor CSV files into a dataset.");

  m.def(
      "generate_scenario",
      [](std::uint64_t seed, int machines, int days, int positions, int codes, int relevant,
         const std::string& kind, int fault_day, int lead, double noise,
         const std::string& start) {
        ScenarioSpec spec;
        spec.seed = seed;
        spec.n_machines = machines;
        spec.days = days;
        spec.positions = positions;
        spec.n_codes = codes;
        spec.n_relevant = relevant;
        spec.fault_day = fault_day;
        spec.lead_days = lead;
        spec.noise_rate = noise;
        spec.start_day = parse_day(start);

        std::pair<Dataset, GroundTruth> result;
        if (kind == "mixed") {
          std::vector<FaultKind> kinds;
          for (int i = 0; i < machines; ++i) {
            kinds.push_back(i % 2 == 0 ? FaultKind::Gradual : FaultKind::Sudden);
          }
          result = generate_fleet(spec, kinds);
        } else {
          spec.fault_kind = fault_kind_from(kind);
          result = generate(spec);
        }
        return py::make_tuple(std::move(result.first), truth_dict(result.second));
      },
      py::arg("seed") = 1, py::arg("machines") = 1, py::arg("days") = 120,
      py::arg("positions") = 3, py::arg("codes") = 300, py::arg("relevant") = 10,
      py::arg("kind") = "gradual", py::arg("fault_day") = 100, py::arg("lead") = 10,
      py::arg("noise") = 0.5, py::arg("start") = "2020-01-01",
      "Generate a synthetic fleet with planted fault signatures.");

  m.def(
      "kendall_tau",
      [](const std::vector<double>& x, const std::vector<double>& y,
         const std::string& variant) { return kendall_tau(x, y, tau_arg(variant)); },
      py::arg("x"), py::arg("y"), py::arg("variant") = "b",
      "Kendall rank correlation; variant 'b' applies the tie correction.");

  m.def(
      "robust_scores",
      [](const std::vector<std::int64_t>& counts, const std::string& std_mode) {
        EventSeries series;
        series.span = {0, static_cast<Day>(counts.size()) - 1};
        series.counts = counts;
        return robust_scores(series, std_arg(std_mode)).scores;
      },
      py::arg("counts"), py::arg("std") = "sample",
      "|count - median| / std for a daily count series.");

  m.def(
      "persistence_scores",
      [](const std::vector<double>& values) {
        SensorSeries series;
        series.position = 1;
        for (std::size_t i = 0; i < values.size(); ++i) {
          series.samples.push_back({static_cast<Timestamp>(i), values[i]});
        }
        std::vector<double> scores;
        for (const auto& p : persistence_scores(series).points) scores.push_back(p.score);
        return scores;
      },
      py::arg("values"),
      "Absolute successive differences; the first sample scores 0.");

  m.def(
      "event_counts",
      [](const Dataset& dataset, const std::string& machine, const std::string& from,
         const std::string& to) {
        const auto span = span_arg(dataset, from, to);
        const auto events = vectorize_events(dataset, pick_machine(dataset, machine), span);
        py::dict counts;
        for (const auto& series : events) counts[py::str(series.code)] = series.counts;
        py::list days;
        for (Day d = span.first; d <= span.last; ++d) days.append(format_day(d));
        py::dict out;
        out["days"] = days;
        out["counts"] = counts;
        return out;
      },
      py::arg("dataset"), py::arg("machine") = std::string(),
      py::arg("from_day") = std::string(), py::arg("to_day") = std::string(),
      "Dense daily counts per event code.");

  m.def(
      "select_features",
      [](const Dataset& dataset, const std::string& machine, const std::string& robot,
         const std::string& from, const std::string& to, double fraction, int target,
         double rho, int k, int window, const std::string& std_mode, const std::string& tau,
         const std::string& agg, const std::string& basis) {
        const auto name = pick_machine(dataset, machine);
        const auto sub = filter_machine(dataset, name);
        const auto span = span_arg(sub, from, to);
        const auto options =
            options_from(fraction, target, rho, k, window, std_mode, tau, agg, basis);
        const auto run = select_features(sub, name, robot_arg(robot), span, options);

        py::list relevance;
        for (const auto& e : run.report.entries) {
          py::dict row;
          row["code"] = e.code;
          row["tau"] = e.taus;
          row["aggregate"] = e.aggregate;
          relevance.append(row);
        }
        py::list decisions;
        for (const auto& d : run.decisions) {
          py::dict row;
          row["code"] = d.code;
          row["kept"] = d.kept;
          row["note"] = d.note;
          decisions.append(row);
        }
        py::dict out;
        out["machine"] = name;
        out["selected"] = run.final_selection.selected;
        out["relevance_cut"] = run.relevance_selection.selected;
        out["relevance"] = relevance;
        out["decisions"] = decisions;
        return out;
      },
      py::arg("dataset"), py::arg("machine") = std::string(), py::arg("robot") = "load",
      py::arg("from_day") = std::string(), py::arg("to_day") = std::string(),
      py::arg("fraction") = 0.20, py::arg("target") = 40, py::arg("rho") = 0.8,
      py::arg("k") = 5, py::arg("window") = 14, py::arg("std") = "sample",
      py::arg("tau") = "b", py::arg("agg") = "max", py::arg("basis") = "robust",
      "Relevance ranking plus redundancy pruning for one machine and robot.");

  m.def(
      "detect",
      [](const Dataset& dataset, const std::string& machine,
         const std::vector<std::string>& codes, int k, const std::string& from,
         const std::string& to) {
        const auto name = pick_machine(dataset, machine);
        const auto sub = filter_machine(dataset, name);
        const auto span = span_arg(sub, from, to);
        const auto result = detect_faults(sub, name, codes, span, k);
        py::list days;
        for (Day d : result.days) days.append(format_day(d));
        py::dict out;
        out["machine"] = name;
        out["days"] = days;
        out["scores"] = result.scores;
        out["top_day"] = format_day(result.top_day);
        return out;
      },
      py::arg("dataset"), py::arg("machine") = std::string(),
      py::arg("codes") = std::vector<std::string>{}, py::arg("k") = 5,
      py::arg("from_day") = std::string(), py::arg("to_day") = std::string(),
      "KNN anomaly score per day; empty codes means every observed code.");

  m.def(
      "evaluate",
      [](const Dataset& dataset, const py::iterable& labels, double fraction, int target,
         double rho, int k, int window, const std::string& std_mode, const std::string& tau,
         const std::string& agg, const std::string& basis) {
        const auto options =
            options_from(fraction, target, rho, k, window, std_mode, tau, agg, basis);
        const auto table = compare_pipelines(dataset, labels_from(labels), options);
        py::list rows;
        for (const auto& r : table.rows) {
          py::dict row;
          row["machine"] = r.machine;
          row["robot"] = std::string(to_string(r.robot));
          row["fault_kind"] = r.fault_kind;
          row["replacement_date"] = format_day(r.replacement_date);
          row["failed"] = r.failed;
          if (r.failed) {
            row["error"] = r.error;
          } else {
            row["messages"] = r.messages;
            row["raw_features"] = r.raw_features;
            row["raw_detected"] = r.raw_detected;
            row["raw_lead_days"] = r.raw_lead_days;
            row["selected_features"] = r.selected_features;
            row["selected_detected"] = r.selected_detected;
            row["selected_lead_days"] = r.selected_lead_days;
          }
          rows.append(row);
        }
        py::dict out;
        out["rows"] = rows;
        out["raw_detected"] = table.raw_detected_total;
        out["selected_detected"] = table.selected_detected_total;
        out["evaluated"] = table.evaluated;
        return out;
      },
      py::arg("dataset"), py::arg("labels"), py::arg("fraction") = 0.20,
      py::arg("target") = 40, py::arg("rho") = 0.8, py::arg("k") = 5, py::arg("window") = 14,
      py::arg("std") = "sample", py::arg("tau") = "b", py::arg("agg") = "max",
      py::arg("basis") = "robust",
      "Raw versus selected detection arms for every labeled machine.");
}
