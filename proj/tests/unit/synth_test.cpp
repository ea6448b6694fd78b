#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "logsel/errors.hpp"
#include "logsel/synth.hpp"
#include "temp.hpp"

using namespace logsel;

TEST_CASE("fault kind names") {
  CHECK(std::string(to_string(FaultKind::Gradual)) == "gradual");
  CHECK(std::string(to_string(FaultKind::Sudden)) == "sudden");
  CHECK(fault_kind_from("gradual") == FaultKind::Gradual);
  CHECK(fault_kind_from("sudden") == FaultKind::Sudden);
  CHECK_THROWS_AS(fault_kind_from("Sudden"), BadSpecError);
  CHECK_THROWS_AS(fault_kind_from(""), BadSpecError);
}

TEST_CASE("generation is deterministic per seed") {
  ScenarioSpec spec;
  spec.seed = 42;
  spec.days = 50;
  spec.n_codes = 40;
  spec.n_relevant = 4;
  spec.fault_day = 40;

  const auto [d1, t1] = generate(spec);
  const auto [d2, t2] = generate(spec);
  CHECK(d1.logs == d2.logs);
  CHECK(d1.sensors == d2.sensors);
  CHECK(t1.relevant_codes == t2.relevant_codes);
  REQUIRE(t1.labels.size() == t2.labels.size());
  CHECK(t1.labels[0].replacement_date == t2.labels[0].replacement_date);

  spec.seed = 43;
  const auto [d3, t3] = generate(spec);
  CHECK(d1.logs != d3.logs);
}

TEST_CASE("scenario structure") {
  ScenarioSpec spec;
  spec.seed = 7;
  spec.days = 60;
  spec.n_codes = 50;
  spec.n_relevant = 5;
  spec.positions = 2;
  spec.fault_day = 50;
  const auto [dataset, truth] = generate(spec);

  CHECK(dataset.span.first == spec.start_day);
  CHECK(dataset.span.last == spec.start_day + spec.days - 1);
  CHECK(dataset.machines == std::vector<std::string>{"M1"});

  REQUIRE(truth.labels.size() == 1);
  const auto& label = truth.labels[0];
  CHECK(label.machine == "M1");
  CHECK(label.robot == Robot::Load);
  CHECK(label.fault_kind == "GF_1");
  // replacement lands on the planned fault day, give or take the jitter
  CHECK(label.replacement_date <= spec.start_day + spec.fault_day);
  CHECK(label.replacement_date >= spec.start_day + spec.fault_day - 5);

  REQUIRE(truth.relevant_codes.size() == 5);
  CHECK(std::is_sorted(truth.relevant_codes.begin(), truth.relevant_codes.end()));
  for (const auto& code : truth.relevant_codes) {
    const auto hits = std::count_if(dataset.logs.begin(), dataset.logs.end(),
                                    [&](const LogRecord& r) { return r.code == code; });
    CHECK(hits > 3);
  }

  // single machine scenarios leave sensors untagged
  for (const auto& s : dataset.sensors) CHECK(s.machine.empty());
  // every configured position reports for both robots
  std::map<std::pair<Robot, int>, int> samples;
  for (const auto& s : dataset.sensors) ++samples[{s.robot, s.position}];
  CHECK(samples.size() == 4);

  // records come out sorted and inside the span
  CHECK(std::is_sorted(dataset.logs.begin(), dataset.logs.end(),
                       [](const LogRecord& a, const LogRecord& b) { return a.ts < b.ts; }));
  CHECK(std::is_sorted(dataset.sensors.begin(), dataset.sensors.end(),
                       [](const SensorRecord& a, const SensorRecord& b) { return a.ts < b.ts; }));
  for (const auto& r : dataset.logs) CHECK(dataset.span.contains(day_of(r.ts)));
  for (const auto& r : dataset.sensors) CHECK(dataset.span.contains(day_of(r.ts)));
}

TEST_CASE("fleets tag sensors and alternate robots") {
  ScenarioSpec spec;
  spec.seed = 3;
  spec.days = 40;
  spec.n_codes = 20;
  spec.n_relevant = 2;
  spec.fault_day = 30;
  const auto [dataset, truth] = generate_fleet(spec, {FaultKind::Gradual, FaultKind::Sudden});

  CHECK(dataset.machines == std::vector<std::string>{"M1", "M2"});
  REQUIRE(truth.labels.size() == 2);
  CHECK(truth.labels[0].fault_kind == "GF_1");
  CHECK(truth.labels[0].robot == Robot::Load);
  CHECK(truth.labels[1].fault_kind == "SF_2");
  CHECK(truth.labels[1].robot == Robot::Unload);
  for (const auto& s : dataset.sensors) {
    CHECK((s.machine == "M1" || s.machine == "M2"));
  }
  // the planted codes are shared fleet-wide
  for (const auto& code : truth.relevant_codes) {
    for (const auto& m : dataset.machines) {
      const bool seen = std::any_of(dataset.logs.begin(), dataset.logs.end(),
                                    [&](const LogRecord& r) {
                                      return r.machine == m && r.code == code;
                                    });
      CHECK(seen);
    }
  }
}

TEST_CASE("a scenario without planted codes still generates") {
  ScenarioSpec spec;
  spec.seed = 9;
  spec.days = 30;
  spec.n_codes = 10;
  spec.n_relevant = 0;
  spec.fault_day = 20;
  const auto [dataset, truth] = generate(spec);
  CHECK(truth.relevant_codes.empty());
  CHECK(truth.labels.size() == 1);
  CHECK_FALSE(dataset.logs.empty());
}

TEST_CASE("spec validation") {
  const auto broken = [](auto mutate) {
    ScenarioSpec spec;
    spec.days = 30;
    spec.n_codes = 10;
    spec.n_relevant = 2;
    spec.fault_day = 20;
    mutate(spec);
    return spec;
  };
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.n_machines = 0; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.days = 1; s.fault_day = 0; })),
                  BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.positions = 0; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.n_codes = 0; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.n_relevant = 11; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.n_relevant = -1; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.fault_day = 30; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.fault_day = -1; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.lead_days = -1; })), BadSpecError);
  CHECK_THROWS_AS(generate(broken([](ScenarioSpec& s) { s.noise_rate = -0.5; })), BadSpecError);
}

TEST_CASE("ground truth JSON layout") {
  ScenarioSpec spec;
  spec.seed = 5;
  spec.days = 30;
  spec.n_codes = 10;
  spec.n_relevant = 2;
  spec.fault_day = 25;
  const auto [dataset, truth] = generate(spec);

  TempDir dir;
  const auto path = (dir.path / "truth.json").string();
  write_ground_truth_json(truth, path);

  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j.at("relevant_codes").get<std::vector<std::string>>() == truth.relevant_codes);
  REQUIRE(j.at("labels").size() == 1);
  CHECK(j["labels"][0].at("machine") == "M1");
  CHECK(j["labels"][0].at("robot") == "Load");
  CHECK(j["labels"][0].at("fault_kind") == "GF_1");
  CHECK(j["labels"][0].at("replacement_date") ==
        format_day(truth.labels[0].replacement_date));
}

TEST_CASE("planted count peaks lead the replacement by about the lead time") {
  // the burst window opens lead_days before the fault and is loudest at its
  // start, so per code count peaks should sit close to lead_days early
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioSpec spec;
    spec.seed = seed;
    const auto [dataset, truth] = generate(spec);
    const Day replacement = truth.labels[0].replacement_date;

    std::vector<double> gaps;
    for (const auto& code : truth.relevant_codes) {
      std::map<Day, int> per_day;
      for (const auto& r : dataset.logs) {
        if (r.code == code) ++per_day[day_of(r.ts)];
      }
      Day peak = 0;
      int best = -1;
      for (const auto& [day, count] : per_day) {
        if (count > best) {
          best = count;
          peak = day;
        }
      }
      gaps.push_back(static_cast<double>(replacement - peak));
    }
    std::sort(gaps.begin(), gaps.end());
    const double median_gap = gaps[gaps.size() / 2];
    CHECK(median_gap >= spec.lead_days - 5);
    CHECK(median_gap <= spec.lead_days + 2);
  }
}
