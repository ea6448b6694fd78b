// Command-line front-end. One subcommand per pipeline stage plus a synthetic
// scenario generator and an end-to-end runner; every command leaves a
// manifest describing the effective configuration and the inputs it saw.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logsel/errors.hpp"
#include "logsel/eval.hpp"
#include "logsel/pipeline.hpp"
#include "logsel/synth.hpp"
#include "logsel/vectorize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace logsel;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string logs;
  std::string sensors;
  std::string labels;
  std::string out = "out";
  std::string machine;
  std::string robot = "load";
  std::string from;
  std::string to;
  std::string selection;
  double fraction = 0.20;
  int target = 40;
  double rho = 0.8;
  int k = 5;
  int window = 14;
  std::string std_mode = "sample";
  std::string tau = "b";
  std::string agg = "max";
  std::string basis = "robust";
  bool strict = false;

  // scenario generator
  std::uint64_t seed = 1;
  int machines = 1;
  int days = 120;
  int positions = 3;
  int codes = 300;
  int relevant = 10;
  std::string kind = "gradual";
  int fault_day = 100;
  int lead = 10;
  double noise = 0.5;
  std::string prefix = "M";
  std::string start = "2020-01-01";
};

Robot parse_robot(const std::string& text) {
  Robot robot{};
  if (!robot_from(text, robot)) throw UsageError("unknown robot \"" + text + "\"");
  return robot;
}

PipelineOptions pipeline_options(const RunConfig& cfg) {
  PipelineOptions options;
  options.fraction = cfg.fraction;
  options.target_count = cfg.target;
  options.rho = cfg.rho;
  options.knn_k = cfg.k;
  options.window_days = cfg.window;
  if (cfg.std_mode == "sample")
    options.std_mode = StdMode::Sample;
  else if (cfg.std_mode == "population")
    options.std_mode = StdMode::Population;
  else
    throw UsageError("unknown std mode \"" + cfg.std_mode + "\"");
  if (cfg.tau == "b")
    options.tau = TauVariant::TauB;
  else if (cfg.tau == "a")
    options.tau = TauVariant::TauA;
  else
    throw UsageError("unknown tau variant \"" + cfg.tau + "\"");
  if (cfg.agg == "max")
    options.aggregation = Aggregation::Max;
  else if (cfg.agg == "mean")
    options.aggregation = Aggregation::Mean;
  else
    throw UsageError("unknown aggregation \"" + cfg.agg + "\"");
  if (cfg.basis == "robust")
    options.basis = RedundancyBasis::RobustScores;
  else if (cfg.basis == "counts")
    options.basis = RedundancyBasis::RawCounts;
  else
    throw UsageError("unknown redundancy basis \"" + cfg.basis + "\"");
  return options;
}

ScenarioSpec scenario_spec(const RunConfig& cfg) {
  ScenarioSpec spec;
  spec.seed = cfg.seed;
  spec.n_machines = cfg.machines;
  spec.days = cfg.days;
  spec.positions = cfg.positions;
  spec.n_codes = cfg.codes;
  spec.n_relevant = cfg.relevant;
  if (cfg.kind != "mixed") spec.fault_kind = fault_kind_from(cfg.kind);
  spec.fault_day = cfg.fault_day;
  spec.lead_days = cfg.lead;
  spec.noise_rate = cfg.noise;
  spec.machine_prefix = cfg.prefix;
  spec.start_day = parse_day(cfg.start);
  return spec;
}

std::vector<FaultKind> scenario_kinds(const RunConfig& cfg) {
  std::vector<FaultKind> kinds;
  for (int i = 0; i < cfg.machines; ++i) {
    if (cfg.kind == "mixed")
      kinds.push_back(i % 2 == 0 ? FaultKind::Gradual : FaultKind::Sudden);
    else
      kinds.push_back(fault_kind_from(cfg.kind));
  }
  return kinds;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

json digest_entry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return json{{"path", path}, {"bytes", bytes.size()}, {"fnv1a64", hex}};
}

json config_json(const RunConfig& cfg) {
  return json{
      {"logs", cfg.logs},          {"sensors", cfg.sensors},
      {"labels", cfg.labels},      {"out", cfg.out},
      {"machine", cfg.machine},    {"robot", cfg.robot},
      {"from", cfg.from},          {"to", cfg.to},
      {"selection", cfg.selection},
      {"fraction", cfg.fraction},  {"target", cfg.target},
      {"rho", cfg.rho},            {"k", cfg.k},
      {"window", cfg.window},      {"std", cfg.std_mode},
      {"tau", cfg.tau},            {"agg", cfg.agg},
      {"basis", cfg.basis},        {"strict", cfg.strict},
      {"seed", cfg.seed},          {"machines", cfg.machines},
      {"days", cfg.days},          {"positions", cfg.positions},
      {"codes", cfg.codes},        {"relevant", cfg.relevant},
      {"kind", cfg.kind},          {"fault_day", cfg.fault_day},
      {"lead", cfg.lead},          {"noise", cfg.noise},
      {"prefix", cfg.prefix},      {"start", cfg.start}};
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config_json(cfg);
  auto in = json::object();
  for (const auto& path : inputs) in[fs::path(path).filename().string()] = digest_entry(path);
  manifest["inputs"] = std::move(in);
  manifest["outputs"] = outputs;

  const fs::path path = fs::path(cfg.out) / (command + "_manifest.json");
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << manifest.dump(2) << '\n';
}

Dataset load_dataset(const RunConfig& cfg, bool need_sensors) {
  if (cfg.logs.empty()) throw UsageError("--logs is required");
  auto logs = read_log_csv(cfg.logs, {}, cfg.strict);
  std::vector<SensorRecord> sensors;
  if (!cfg.sensors.empty()) {
    sensors = read_sensor_csv(cfg.sensors, {}, 0, cfg.strict).records;
  } else if (need_sensors) {
    throw UsageError("--sensors is required");
  }
  return build_dataset(std::move(logs.records), std::move(sensors));
}

std::string pick_machine(const RunConfig& cfg, const Dataset& dataset) {
  if (!cfg.machine.empty()) return cfg.machine;
  if (dataset.machines.size() == 1) return dataset.machines.front();
  throw UsageError("--machine is required when the data covers several machines");
}

DayRange pick_span(const RunConfig& cfg, const Dataset& dataset) {
  if (cfg.from.empty() != cfg.to.empty())
    throw UsageError("--from and --to must be given together");
  if (cfg.from.empty()) return dataset.span;
  const Day first = parse_day(cfg.from);
  const Day last = parse_day(cfg.to);
  if (last < first) throw UsageError("--to precedes --from");
  return DayRange{first, last};
}

std::vector<std::string> manifest_inputs(const RunConfig& cfg) {
  std::vector<std::string> inputs;
  if (!cfg.logs.empty()) inputs.push_back(cfg.logs);
  if (!cfg.sensors.empty()) inputs.push_back(cfg.sensors);
  if (!cfg.labels.empty()) inputs.push_back(cfg.labels);
  if (!cfg.selection.empty()) inputs.push_back(cfg.selection);
  return inputs;
}

int cmd_vectorize(const RunConfig& cfg) {
  auto dataset = load_dataset(cfg, false);
  const auto machine = pick_machine(cfg, dataset);
  const auto span = pick_span(cfg, dataset);
  auto events = vectorize_events(dataset, machine, span);

  fs::create_directories(cfg.out);
  write_event_series_csv(fs::path(cfg.out) / "events.csv", events);
  write_manifest(cfg, "vectorize", manifest_inputs(cfg), {"events.csv"});
  std::printf("%zu event series for %s over %s..%s\n", events.size(), machine.c_str(),
              format_day(span.first).c_str(), format_day(span.last).c_str());
  return 0;
}

int cmd_select(const RunConfig& cfg) {
  auto dataset = load_dataset(cfg, true);
  const auto machine = pick_machine(cfg, dataset);
  auto sub = filter_machine(dataset, machine);
  const auto span = pick_span(cfg, sub);
  auto run = select_features(sub, machine, parse_robot(cfg.robot), span,
                             pipeline_options(cfg));

  fs::create_directories(cfg.out);
  write_relevance_csv(fs::path(cfg.out) / "relevance.csv", run.report);
  write_selection_json(fs::path(cfg.out) / "selection.json", run.final_selection);
  write_prune_decisions_csv(fs::path(cfg.out) / "prune_decisions.csv", run.decisions);
  write_manifest(cfg, "select", manifest_inputs(cfg),
                 {"relevance.csv", "selection.json", "prune_decisions.csv"});
  std::printf("selected %zu of %zu codes for %s\n", run.final_selection.selected.size(),
              run.report.entries.size(), machine.c_str());
  return 0;
}

int cmd_detect(const RunConfig& cfg) {
  auto dataset = load_dataset(cfg, false);
  const auto machine = pick_machine(cfg, dataset);
  const auto span = pick_span(cfg, dataset);
  std::vector<std::string> codes;
  if (!cfg.selection.empty()) codes = read_selection_json(cfg.selection).selected;
  auto result = detect_faults(dataset, machine, codes, span, cfg.k);

  fs::create_directories(cfg.out);
  write_anomaly_csv(fs::path(cfg.out) / "anomaly.csv", result);
  write_anomaly_json(fs::path(cfg.out) / "anomaly.json", result, cfg.k);
  write_manifest(cfg, "detect", manifest_inputs(cfg), {"anomaly.csv", "anomaly.json"});
  if (codes.empty())
    std::printf("top anomaly day %s (all observed codes)\n", format_day(result.top_day).c_str());
  else
    std::printf("top anomaly day %s (%zu features)\n", format_day(result.top_day).c_str(),
                codes.size());
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  if (cfg.labels.empty()) throw UsageError("--labels is required");
  auto dataset = load_dataset(cfg, true);
  auto labels = read_labels_csv(cfg.labels);
  auto table = compare_pipelines(dataset, labels, pipeline_options(cfg));

  fs::create_directories(cfg.out);
  write_comparison_csv(fs::path(cfg.out) / "comparison.csv", table);
  const std::string text = format_comparison_text(table);
  {
    std::ofstream file(fs::path(cfg.out) / "comparison.txt");
    if (!file) throw IoError("cannot write comparison.txt");
    file << text;
  }
  write_manifest(cfg, "evaluate", manifest_inputs(cfg),
                 {"comparison.csv", "comparison.txt"});
  std::fputs(text.c_str(), stdout);
  return 0;
}

std::vector<std::string> write_scenario(const RunConfig& cfg, const Dataset& dataset,
                                        const GroundTruth& truth) {
  fs::create_directories(cfg.out);
  write_log_csv(fs::path(cfg.out) / "logs.csv", dataset.logs);
  write_sensor_csv(fs::path(cfg.out) / "sensors.csv", dataset.sensors);
  write_labels_csv(fs::path(cfg.out) / "labels.csv", truth.labels);
  write_ground_truth_json(truth, (fs::path(cfg.out) / "truth.json").string());
  return {"logs.csv", "sensors.csv", "labels.csv", "truth.json"};
}

int cmd_synth(const RunConfig& cfg) {
  auto [dataset, truth] = generate_fleet(scenario_spec(cfg), scenario_kinds(cfg));
  auto outputs = write_scenario(cfg, dataset, truth);
  write_manifest(cfg, "synth", {}, outputs);
  std::printf("%zu machines, %zu log records, %zu sensor records\n",
              dataset.machines.size(), dataset.logs.size(), dataset.sensors.size());
  return 0;
}

int cmd_run_all(const RunConfig& cfg) {
  auto [dataset, truth] = generate_fleet(scenario_spec(cfg), scenario_kinds(cfg));
  auto outputs = write_scenario(cfg, dataset, truth);

  const auto options = pipeline_options(cfg);
  auto table = compare_pipelines(dataset, truth.labels, options);
  write_comparison_csv(fs::path(cfg.out) / "comparison.csv", table);
  const std::string text = format_comparison_text(table);
  {
    std::ofstream file(fs::path(cfg.out) / "comparison.txt");
    if (!file) throw IoError("cannot write comparison.txt");
    file << text;
  }
  outputs.push_back("comparison.csv");
  outputs.push_back("comparison.txt");

  // Selection recall against the generator's planted codes, per machine.
  std::set<std::string> planted(truth.relevant_codes.begin(), truth.relevant_codes.end());
  json results;
  auto rows = json::array();
  double recall_sum = 0.0;
  for (const auto& label : truth.labels) {
    auto sub = filter_machine(dataset, label.machine);
    DayRange span{sub.span.first, label.replacement_date};
    auto run = select_features(sub, label.machine, label.robot, span, options);
    int hits = 0;
    for (const auto& code : run.final_selection.selected)
      if (planted.count(code)) ++hits;
    const double recall =
        planted.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(planted.size());
    recall_sum += recall;
    rows.push_back({{"machine", label.machine},
                    {"fault_kind", label.fault_kind},
                    {"recall", recall},
                    {"selected", run.final_selection.selected.size()}});
  }
  results["machines"] = std::move(rows);
  results["mean_recall"] =
      truth.labels.empty() ? 0.0 : recall_sum / static_cast<double>(truth.labels.size());
  results["raw_detected"] = table.raw_detected_total;
  results["selected_detected"] = table.selected_detected_total;
  results["evaluated"] = table.evaluated;
  {
    std::ofstream file(fs::path(cfg.out) / "results.json");
    if (!file) throw IoError("cannot write results.json");
    file << results.dump(2) << '\n';
  }
  outputs.push_back("results.json");

  write_manifest(cfg, "run-all", {}, outputs);
  std::fputs(text.c_str(), stdout);
  std::printf("mean selection recall %.3f\n", results["mean_recall"].get<double>());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"log event feature selection for wafer handler fault detection"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a key=value file");

  RunConfig cfg;
  app.add_option("--logs", cfg.logs, "event log CSV");
  app.add_option("--sensors", cfg.sensors, "sensor reading CSV");
  app.add_option("--labels", cfg.labels, "replacement label CSV");
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--machine", cfg.machine, "machine name (default: the only one present)");
  app.add_option("--robot", cfg.robot, "robot: load or unload")->capture_default_str();
  app.add_option("--from", cfg.from, "span start, YYYY-MM-DD");
  app.add_option("--to", cfg.to, "span end, YYYY-MM-DD");
  app.add_option("--selection", cfg.selection, "selection JSON from a select run");
  app.add_option("--fraction", cfg.fraction, "relevance cut fraction")->capture_default_str();
  app.add_option("--target", cfg.target, "feature count after pruning")->capture_default_str();
  app.add_option("--rho", cfg.rho, "redundancy threshold on |tau|")->capture_default_str();
  app.add_option("--k", cfg.k, "KNN neighbor index")->capture_default_str();
  app.add_option("--window", cfg.window, "detection window in days")->capture_default_str();
  app.add_option("--std", cfg.std_mode, "std estimator: sample or population")
      ->capture_default_str();
  app.add_option("--tau", cfg.tau, "Kendall variant: b or a")->capture_default_str();
  app.add_option("--agg", cfg.agg, "position aggregation: max or mean")->capture_default_str();
  app.add_option("--basis", cfg.basis, "redundancy basis: robust or counts")
      ->capture_default_str();
  app.add_flag("--strict", cfg.strict, "fail on malformed rows instead of skipping");

  app.add_option("--seed", cfg.seed, "scenario seed")->capture_default_str();
  app.add_option("--machines", cfg.machines, "scenario machine count")->capture_default_str();
  app.add_option("--days", cfg.days, "scenario span in days")->capture_default_str();
  app.add_option("--positions", cfg.positions, "sensor positions per robot")
      ->capture_default_str();
  app.add_option("--codes", cfg.codes, "distinct event codes")->capture_default_str();
  app.add_option("--relevant", cfg.relevant, "planted relevant codes")->capture_default_str();
  app.add_option("--kind", cfg.kind, "fault kind: gradual, sudden or mixed")
      ->capture_default_str();
  app.add_option("--fault-day", cfg.fault_day, "fault day offset from start")
      ->capture_default_str();
  app.add_option("--lead", cfg.lead, "days the burst leads the fault")->capture_default_str();
  app.add_option("--noise", cfg.noise, "background trigger rate per code per day")
      ->capture_default_str();
  app.add_option("--prefix", cfg.prefix, "machine name prefix")->capture_default_str();
  app.add_option("--start", cfg.start, "scenario start date")->capture_default_str();

  auto* sub_vectorize = app.add_subcommand("vectorize", "daily event counts per code");
  auto* sub_select = app.add_subcommand("select", "rank and select log features");
  auto* sub_detect = app.add_subcommand("detect", "KNN anomaly scores per day");
  auto* sub_evaluate = app.add_subcommand("evaluate", "raw vs selected detection per machine");
  auto* sub_synth = app.add_subcommand("synth", "generate a synthetic scenario");
  auto* sub_run_all = app.add_subcommand("run-all", "synth + select + detect + evaluate");
  for (auto* sub : {sub_vectorize, sub_select, sub_detect, sub_evaluate, sub_synth, sub_run_all})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sub_vectorize->parsed()) return cmd_vectorize(cfg);
    if (sub_select->parsed()) return cmd_select(cfg);
    if (sub_detect->parsed()) return cmd_detect(cfg);
    if (sub_evaluate->parsed()) return cmd_evaluate(cfg);
    if (sub_synth->parsed()) return cmd_synth(cfg);
    if (sub_run_all->parsed()) return cmd_run_all(cfg);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::fprintf(stderr, "%s\n", json{{"kind", "usage"}, {"error", e.what()}}.dump().c_str());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", json{{"kind", "data"}, {"error", e.what()}}.dump().c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", json{{"kind", "internal"}, {"error", e.what()}}.dump().c_str());
    return 2;
  }
}
