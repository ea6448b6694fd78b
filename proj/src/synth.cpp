#include "logsel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

#include <json.hpp>

#include "logsel/errors.hpp"
#include "logsel/rng.hpp"

namespace logsel {

const char* to_string(FaultKind kind) {
  return kind == FaultKind::Gradual ? "gradual" : "sudden";
}

FaultKind fault_kind_from(std::string_view text) {
  if (text == "gradual") return FaultKind::Gradual;
  if (text == "sudden") return FaultKind::Sudden;
  throw BadSpecError("unknown fault kind \"" + std::string(text) + "\"");
}

namespace {

std::string code_name(int c) {
  std::string name;
  name += static_cast<char>('A' + (c / 26) % 26);
  name += static_cast<char>('A' + c % 26);
  char digits[16];
  std::snprintf(digits, sizeof digits, "-%04d", 1000 + c);
  return name + digits;
}

Severity sample_severity(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.60) return Severity::Low;
  if (u < 0.90) return Severity::Medium;
  return Severity::High;
}

Timestamp moment_in_day(Day day, Rng& rng) {
  return static_cast<Timestamp>(day) * 86400 + rng.uniform_int(0, 86399);
}

void emit_events(std::vector<LogRecord>& logs, const std::string& machine,
                 const std::string& code, Day day, int count, Rng& rng) {
  for (int i = 0; i < count; ++i) {
    logs.push_back(LogRecord{machine, code, sample_severity(rng),
                             "auto report " + code, moment_in_day(day, rng)});
  }
}

void validate(const ScenarioSpec& spec, std::size_t n_machines) {
  if (n_machines < 1) throw BadSpecError("scenario needs at least one machine");
  if (spec.days < 2) throw BadSpecError("scenario needs at least two days");
  if (spec.positions < 1) throw BadSpecError("scenario needs at least one position");
  if (spec.n_codes < 1) throw BadSpecError("scenario needs at least one event code");
  if (spec.n_relevant < 0 || spec.n_relevant > spec.n_codes)
    throw BadSpecError("n_relevant must lie in [0, n_codes]");
  if (spec.fault_day < 0 || spec.fault_day >= spec.days)
    throw BadSpecError("fault_day must lie in [0, days)");
  if (spec.lead_days < 0) throw BadSpecError("lead_days must be non-negative");
  if (spec.noise_rate < 0.0) throw BadSpecError("noise_rate must be non-negative");
}

struct MachinePlan {
  std::string name;
  FaultKind kind = FaultKind::Gradual;
  Robot robot = Robot::Load;
  int fault_offset = 0;            // days from start_day
  std::vector<int> affected;       // 1-based positions carrying the wear signal
};

// Burst intensity for a relevant code, highest right at the start of the
// pre-fault window so the count peak leads the sensor deviation peak.
double burst_rate(FaultKind kind, int day_in_window, double w) {
  const double mult = kind == FaultKind::Sudden ? 3.0 : 1.0;
  const double boost = day_in_window <= 1 ? 2.0 : 1.0;
  return mult * 8.0 * boost * (1.0 - 0.4 * w);
}

void generate_logs(const ScenarioSpec& spec, const MachinePlan& plan,
                   const std::vector<int>& relevant_ids, Rng& rng,
                   std::vector<LogRecord>& logs) {
  std::set<int> relevant(relevant_ids.begin(), relevant_ids.end());

  // Pre-fault bursts of the planted codes. Each code fires on its own
  // random subset of the window days so no pair of them is rank-identical.
  const int window_end = plan.fault_offset;
  const int window_start = std::max(0, window_end - spec.lead_days);
  const int window_len = window_end - window_start;
  for (int id : relevant_ids) {
    const std::string code = code_name(id);
    // Every code starts firing right at the window start, then keeps going
    // on its own half of the remaining days. Distinct day subsets keep any
    // two planted codes from agreeing in rank often enough to look
    // redundant to the pruner.
    std::vector<int> rest(window_len);
    for (int i = 0; i < window_len; ++i) rest[i] = i + 1;
    int extra = window_len / 2;
    if (window_len > 0 && rng.bernoulli(0.5)) ++extra;
    for (int i = 0; i < extra; ++i) {
      const auto j = rng.uniform_int(i, window_len - 1);
      std::swap(rest[i], rest[j]);
    }
    std::vector<int> active{0};
    active.insert(active.end(), rest.begin(), rest.begin() + extra);
    std::sort(active.begin(), active.end());

    for (int offset : active) {
      const int d = window_start + offset;
      const double w = window_len > 0 ? static_cast<double>(offset) / window_len : 0.0;
      const int count = 1 + rng.poisson(burst_rate(plan.kind, offset, w));
      emit_events(logs, plan.name, code, spec.start_day + d, count, rng);
    }
    // A handful of stray single triggers through the year; real codes are
    // never perfectly silent outside the fault.
    for (int i = 0; i < 3; ++i) {
      const Day day = spec.start_day + rng.uniform_int(0, spec.days - 1);
      emit_events(logs, plan.name, code, day, 1, rng);
    }
  }

  // Background chatter: every other code triggers at a low daily rate all the
  // time, unrelated to the fault.
  for (int c = 0; c < spec.n_codes; ++c) {
    if (relevant.count(c)) continue;
    const std::string code = code_name(c);
    for (int d = 0; d < spec.days; ++d) {
      const int count = rng.poisson(spec.noise_rate);
      if (count > 0) emit_events(logs, plan.name, code, spec.start_day + d, count, rng);
    }
  }

  // Storm days: coordinated bursts of a random slice of the background codes,
  // the kind of fleet-wide noise that drowns an unfiltered detector.
  const int storms = std::max(1, spec.days / 40);
  for (int s = 0; s < storms; ++s) {
    const Day day = spec.start_day + rng.uniform_int(0, spec.days - 1);
    for (int c = 0; c < spec.n_codes; ++c) {
      if (relevant.count(c)) continue;
      if (!rng.bernoulli(0.15)) continue;
      emit_events(logs, plan.name, code_name(c), day, 2 + rng.poisson(10.0), rng);
    }
  }
}

void generate_sensors(const ScenarioSpec& spec, const MachinePlan& plan,
                      bool tag_machine, Rng& rng, std::vector<SensorRecord>& sensors) {
  const int ramp = std::max(1, spec.lead_days);
  const int ramp_start = plan.fault_offset - ramp;

  for (Robot robot : {Robot::Load, Robot::Unload}) {
    for (int p = 1; p <= spec.positions; ++p) {
      const double base = 0.05 + 0.01 * p;
      const bool wears = robot == plan.robot &&
                         std::find(plan.affected.begin(), plan.affected.end(), p) !=
                             plan.affected.end();
      for (int d = 0; d < spec.days; ++d) {
        if (!rng.bernoulli(0.95)) continue;  // occasional day without samples
        const int n = 1 + rng.poisson(4.0);
        std::vector<Timestamp> times(n);
        for (auto& t : times) t = moment_in_day(spec.start_day + d, rng);
        std::sort(times.begin(), times.end());

        std::vector<double> values(n);
        for (auto& v : values) v = base + rng.normal(0.0, 0.002);

        if (wears && plan.kind == FaultKind::Sudden && d >= plan.fault_offset - 6 &&
            d <= plan.fault_offset) {
          for (auto& v : values) v = base + 0.02 + rng.normal(0.0, 0.012);
        } else if (wears && plan.kind == FaultKind::Gradual && d >= ramp_start &&
                   d <= plan.fault_offset) {
          // Drift plus transient spikes that grow toward the fault day.
          const double q = static_cast<double>(d - ramp_start + 1) / (ramp + 1);
          const double amp = 0.012 + 0.018 * q * q;
          for (auto& v : values) v += 0.004 * q;
          bool spiked = false;
          for (auto& v : values) {
            if (!rng.bernoulli(0.35)) continue;
            v += rng.bernoulli(0.5) ? amp : -amp;
            spiked = true;
          }
          if (!spiked) values[0] += amp;
        }

        for (int i = 0; i < n; ++i) {
          sensors.push_back(SensorRecord{tag_machine ? plan.name : std::string(),
                                         robot, p, values[i], times[i]});
        }
      }
    }
  }
}

}  // namespace

std::pair<Dataset, GroundTruth> generate_fleet(const ScenarioSpec& spec,
                                               const std::vector<FaultKind>& kinds) {
  validate(spec, kinds.size());

  Rng root(splitmix64(spec.seed));
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < spec.n_relevant) {
    chosen.insert(static_cast<int>(root.uniform_int(0, spec.n_codes - 1)));
  }
  const std::vector<int> relevant_ids(chosen.begin(), chosen.end());

  Dataset dataset;
  GroundTruth truth;
  for (int id : relevant_ids) truth.relevant_codes.push_back(code_name(id));
  std::sort(truth.relevant_codes.begin(), truth.relevant_codes.end());

  const bool fleet = kinds.size() > 1;
  for (std::size_t mi = 0; mi < kinds.size(); ++mi) {
    Rng rng(splitmix64(spec.seed ^ splitmix64(mi + 1)));

    MachinePlan plan;
    plan.name = spec.machine_prefix + std::to_string(mi + 1);
    plan.kind = kinds[mi];
    plan.robot = mi % 2 == 0 ? Robot::Load : Robot::Unload;
    const int jitter_max = std::min(5, spec.fault_day);
    plan.fault_offset = spec.fault_day - static_cast<int>(rng.uniform_int(0, jitter_max));
    for (int p = 1; p <= spec.positions; ++p) {
      if (rng.bernoulli(0.7)) plan.affected.push_back(p);
    }
    if (plan.affected.empty()) {
      plan.affected.push_back(static_cast<int>(rng.uniform_int(1, spec.positions)));
    }

    generate_logs(spec, plan, relevant_ids, rng, dataset.logs);
    generate_sensors(spec, plan, fleet, rng, dataset.sensors);

    FaultLabel label;
    label.machine = plan.name;
    label.robot = plan.robot;
    label.fault_kind = (plan.kind == FaultKind::Gradual ? "GF_" : "SF_") +
                       std::to_string(mi + 1);
    label.replacement_date = spec.start_day + plan.fault_offset;
    truth.labels.push_back(label);

    dataset.machines.push_back(plan.name);
  }

  std::sort(dataset.logs.begin(), dataset.logs.end(),
            [](const LogRecord& a, const LogRecord& b) {
              return std::tie(a.ts, a.machine, a.code, a.detail) <
                     std::tie(b.ts, b.machine, b.code, b.detail);
            });
  std::sort(dataset.sensors.begin(), dataset.sensors.end(),
            [](const SensorRecord& a, const SensorRecord& b) {
              return std::tie(a.ts, a.machine, a.robot, a.position, a.value) <
                     std::tie(b.ts, b.machine, b.robot, b.position, b.value);
            });
  std::sort(dataset.machines.begin(), dataset.machines.end());
  dataset.span = DayRange{spec.start_day, spec.start_day + spec.days - 1};
  return {std::move(dataset), std::move(truth)};
}

std::pair<Dataset, GroundTruth> generate(const ScenarioSpec& spec) {
  return generate_fleet(spec, std::vector<FaultKind>(
                                  static_cast<std::size_t>(std::max(spec.n_machines, 0)),
                                  spec.fault_kind));
}

void write_ground_truth_json(const GroundTruth& truth, const std::string& path) {
  nlohmann::json j;
  j["relevant_codes"] = truth.relevant_codes;
  auto labels = nlohmann::json::array();
  for (const auto& label : truth.labels) {
    labels.push_back({{"machine", label.machine},
                      {"robot", to_string(label.robot)},
                      {"fault_kind", label.fault_kind},
                      {"replacement_date", format_day(label.replacement_date)}});
  }
  j["labels"] = std::move(labels);

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace logsel
