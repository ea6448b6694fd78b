// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any of them fail. argv[1] must point at
// the logsel CLI binary (used by the determinism check).

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logsel/detectors.hpp"
#include "logsel/eval.hpp"
#include "logsel/knn.hpp"
#include "logsel/pipeline.hpp"
#include "logsel/relevance.hpp"
#include "logsel/synth.hpp"

using namespace logsel;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances. Rank statistics and integer arithmetic are checked
// exactly; additive float identities get a small absolute budget.
constexpr double kTauTolerance = 1e-12;
constexpr double kScoreTolerance = 1e-9;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1: Kendall tau against a quadratic enumeration ---------------

double tau_b_brute(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0, tie_both = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) ++tie_both;
      else if (dx == 0.0) ++tie_x;
      else if (dy == 0.0) ++tie_y;
      else if ((dx > 0.0) == (dy > 0.0)) ++concordant;
      else ++discordant;
    }
  }
  const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double dx = n0 - static_cast<double>(tie_x + tie_both);
  const double dy = n0 - static_cast<double>(tie_y + tie_both);
  if (dx == 0.0 || dy == 0.0) return 0.0;
  return static_cast<double>(concordant - discordant) / std::sqrt(dx * dy);
}

bool criterion_tau_oracle(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20201);
  std::uniform_int_distribution<int> len_dist(2, 50);
  std::uniform_int_distribution<int> value_dist(0, 4);  // heavy ties

  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len_dist(rng);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = value_dist(rng);
      y[i] = value_dist(rng);
    }
    const double fast = kendall_tau(x, y, TauVariant::TauB);
    const double slow = tau_b_brute(x, y);
    worst = std::max(worst, std::abs(fast - slow));
    if (worst > kTauTolerance) {
      detail = "mismatch " + std::to_string(worst) + " at trial " + std::to_string(trial);
      return false;
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "1000 pairs, max |diff| %.2e, %.2fs", worst, elapsed);
  detail = buf;
  return elapsed < 5.0;
}

// --- criterion 2: hand-derived detector identities ---------------------------

bool criterion_detector_identities(std::string& detail) {
  EventSeries counts;
  counts.machine = "M";
  counts.code = "A";
  counts.span = {0, 3};
  counts.counts = {0, 0, 0, 10};
  const auto robust = robust_scores(counts, StdMode::Sample);
  if (robust.scores != std::vector<double>{0.0, 0.0, 0.0, 2.0}) {
    detail = "robust scores off";
    return false;
  }

  SensorSeries sensor;
  sensor.position = 1;
  sensor.samples = {{0, 2.0}, {3600, 5.0}, {7200, 3.0}};
  const auto persistence = persistence_scores(sensor);
  if (persistence.points.size() != 3 || persistence.points[0].score != 0.0 ||
      persistence.points[1].score != 3.0 || persistence.points[2].score != 2.0) {
    detail = "persistence scores off";
    return false;
  }

  RawScoreSeries raw;
  raw.points = {{3600, 1.0}, {7200, 3.0}, {2 * 86400 + 60, 2.0}};
  const auto aligned = align_daily_max(raw, {0, 2});
  if (aligned.scores != std::vector<double>{3.0, 0.0, 2.0}) {
    detail = "alignment off";
    return false;
  }
  detail = "robust, persistence and alignment identities hold exactly";
  return true;
}

// --- criterion 3: invariance suite -------------------------------------------

bool criterion_invariances(std::string& detail) {
  std::mt19937_64 rng(555);

  // robust scores under count -> a*count + b, a > 0
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len_dist(2, 60);
    std::uniform_int_distribution<std::int64_t> count_dist(0, 20);
    std::uniform_int_distribution<std::int64_t> a_dist(1, 5);
    std::uniform_int_distribution<std::int64_t> b_dist(0, 12);
    const int n = len_dist(rng);
    const std::int64_t a = a_dist(rng), b = b_dist(rng);
    EventSeries base, scaled;
    base.span = scaled.span = {0, n - 1};
    base.counts.resize(n);
    scaled.counts.resize(n);
    for (int i = 0; i < n; ++i) {
      base.counts[i] = count_dist(rng);
      scaled.counts[i] = a * base.counts[i] + b;
    }
    const auto s1 = robust_scores(base, StdMode::Sample);
    const auto s2 = robust_scores(scaled, StdMode::Sample);
    for (int i = 0; i < n; ++i) {
      if (std::abs(s1.scores[i] - s2.scores[i]) > kScoreTolerance) {
        detail = "robust affine invariance violated in trial " + std::to_string(trial);
        return false;
      }
    }
  }

  // persistence under value + c
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len_dist(2, 40);
    std::uniform_real_distribution<double> value_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> shift_dist(-100.0, 100.0);
    const int n = len_dist(rng);
    const double c = shift_dist(rng);
    SensorSeries base, shifted;
    for (int i = 0; i < n; ++i) {
      const double v = value_dist(rng);
      base.samples.push_back({static_cast<Timestamp>(i) * 600, v});
      shifted.samples.push_back({static_cast<Timestamp>(i) * 600, v + c});
    }
    const auto p1 = persistence_scores(base);
    const auto p2 = persistence_scores(shifted);
    for (int i = 0; i < n; ++i) {
      if (std::abs(p1.points[i].score - p2.points[i].score) > kScoreTolerance) {
        detail = "persistence shift invariance violated in trial " + std::to_string(trial);
        return false;
      }
    }
  }

  // tau under strictly increasing transforms; integer-exact, so equality is exact
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len_dist(2, 50);
    std::uniform_int_distribution<int> value_dist(0, 9);
    const int n = len_dist(rng);
    std::vector<double> x(n), y(n), tx(n), ty(n);
    for (int i = 0; i < n; ++i) {
      x[i] = value_dist(rng);
      y[i] = value_dist(rng);
      tx[i] = 3.0 * x[i] + 7.0;
      ty[i] = y[i] * y[i] * y[i];  // monotone over the non-negative draws
    }
    if (kendall_tau(tx, ty) != kendall_tau(x, y)) {
      detail = "tau transform invariance violated in trial " + std::to_string(trial);
      return false;
    }
  }

  // selection set under positive rescaling of any one sensor series
  ScenarioSpec spec;
  spec.days = 80;
  spec.n_codes = 60;
  spec.n_relevant = 5;
  spec.fault_day = 65;
  PipelineOptions options;
  std::uniform_real_distribution<double> scale_dist(0.1, 10.0);
  for (int scenario = 0; scenario < 20; ++scenario) {
    spec.seed = 300 + static_cast<std::uint64_t>(scenario);
    const auto [dataset, truth] = generate(spec);
    const auto& label = truth.labels[0];
    const DayRange span{dataset.span.first, label.replacement_date};
    const auto base =
        select_features(dataset, label.machine, label.robot, span, options);
    std::uniform_int_distribution<int> position_dist(1, spec.positions);
    for (int trial = 0; trial < 10; ++trial) {
      const double a = scale_dist(rng);
      const int position = position_dist(rng);
      const bool unload = rng() % 2 == 0;
      Dataset scaled = dataset;
      for (auto& s : scaled.sensors) {
        if (s.position == position && (s.robot == Robot::Unload) == unload) s.value *= a;
      }
      const auto run = select_features(scaled, label.machine, label.robot, span, options);
      if (run.final_selection.selected != base.final_selection.selected) {
        detail = "selection changed under rescale, scenario " + std::to_string(scenario);
        return false;
      }
    }
  }

  detail = "robust affine, persistence shift, tau transform, selection rescale: 200 trials each";
  return true;
}

// --- criterion 4: KNN against brute force ------------------------------------

std::vector<double> knn_brute(const EventCountMatrix& m, int k) {
  std::vector<double> scores(m.rows());
  std::vector<double> dists;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    dists.clear();
    for (std::size_t j = 0; j < m.rows(); ++j) {
      if (j == i) continue;
      double sum = 0.0;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const double d = static_cast<double>(m.at(i, c) - m.at(j, c));
        sum += d * d;
      }
      dists.push_back(sum);
    }
    std::sort(dists.begin(), dists.end());
    scores[i] = std::sqrt(dists[static_cast<std::size_t>(k - 1)]);
  }
  return scores;
}

bool criterion_knn_oracle(std::string& detail) {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> rows_dist(6, 200);
  std::uniform_int_distribution<int> cols_dist(1, 40);
  std::uniform_int_distribution<std::int64_t> value_dist(0, 9);
  std::uniform_int_distribution<int> k_dist(1, 5);

  for (int trial = 0; trial < 100; ++trial) {
    EventCountMatrix m;
    const int rows = rows_dist(rng);
    const int cols = cols_dist(rng);
    for (int j = 0; j < cols; ++j) m.codes.push_back("C" + std::to_string(j));
    for (int i = 0; i < rows; ++i) {
      m.days.push_back(i);
      for (int j = 0; j < cols; ++j) m.values.push_back(value_dist(rng));
    }

    const int k = k_dist(rng);
    const auto fast = knn_scores(m, k);
    const auto slow = knn_brute(m, k);
    for (std::size_t i = 0; i < fast.scores.size(); ++i) {
      if (fast.scores[i] != slow[i]) {  // integer-valued sums, exact
        detail = "score mismatch at trial " + std::to_string(trial);
        return false;
      }
    }

    std::vector<double> previous = knn_scores(m, 1).scores;
    for (int kk = 2; kk <= 5; ++kk) {
      const auto current = knn_scores(m, kk).scores;
      for (std::size_t i = 0; i < current.size(); ++i) {
        if (current[i] < previous[i]) {
          detail = "k-monotonicity violated at trial " + std::to_string(trial);
          return false;
        }
      }
      previous = current;
    }
  }
  detail = "100 matrices exact, monotone in k for k in 1..5";
  return true;
}

// --- criterion 5: planted-code recovery --------------------------------------

bool criterion_planted_recovery(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  PipelineOptions options;  // fraction 0.20, target 40
  std::mt19937_64 baseline_rng(9001);

  double recall_sum = 0.0;
  double baseline_sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScenarioSpec spec;
    spec.seed = seed;  // defaults: 300 codes, 10 relevant, gradual
    const auto [dataset, truth] = generate(spec);
    const auto& label = truth.labels[0];
    const DayRange span{dataset.span.first, label.replacement_date};
    const auto run = select_features(dataset, label.machine, label.robot, span, options);

    const std::set<std::string> selected(run.final_selection.selected.begin(),
                                         run.final_selection.selected.end());
    int hit = 0;
    for (const auto& code : truth.relevant_codes) hit += selected.count(code) ? 1 : 0;
    recall_sum += static_cast<double>(hit) / static_cast<double>(truth.relevant_codes.size());

    // random draw of the same size from the observed codes
    std::vector<std::string> universe;
    for (const auto& e : run.report.entries) universe.push_back(e.code);
    std::vector<std::string> random_pick;
    std::sample(universe.begin(), universe.end(), std::back_inserter(random_pick),
                run.final_selection.selected.size(), baseline_rng);
    const std::set<std::string> random_set(random_pick.begin(), random_pick.end());
    int random_hit = 0;
    for (const auto& code : truth.relevant_codes) random_hit += random_set.count(code) ? 1 : 0;
    baseline_sum +=
        static_cast<double>(random_hit) / static_cast<double>(truth.relevant_codes.size());
  }

  const double recall = recall_sum / 20.0;
  const double baseline = baseline_sum / 20.0;
  const double elapsed = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "mean recall %.3f (need >= 0.9), random baseline %.3f (need <= 0.25), %.1fs",
                recall, baseline, elapsed);
  detail = buf;
  return recall >= 0.9 && baseline <= 0.25 && elapsed < 60.0;
}

// --- criterion 6: raw vs selected arms on a mixed fleet -----------------------

bool criterion_fleet_comparison(std::string& detail) {
  ScenarioSpec spec;
  spec.seed = 1;
  std::vector<FaultKind> kinds(6, FaultKind::Gradual);
  kinds.insert(kinds.end(), 6, FaultKind::Sudden);
  const auto [fleet, truth] = generate_fleet(spec, kinds);

  PipelineOptions options;  // defaults throughout
  const auto table = compare_pipelines(fleet, truth.labels, options);

  char buf[160];
  std::snprintf(buf, sizeof buf, "selected %d/12 vs raw %d/12 (%d machines evaluated)",
                table.selected_detected_total, table.raw_detected_total, table.evaluated);
  detail = buf;
  return table.evaluated == 12 &&
         table.selected_detected_total >= table.raw_detected_total &&
         table.selected_detected_total >= 10;
}

// --- criterion 7: byte-identical reruns ---------------------------------------

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool criterion_determinism(const fs::path& cli, std::string& detail) {
  if (cli.empty()) {
    detail = "CLI binary path missing (pass it as argv[1])";
    return false;
  }

  const fs::path root = fs::temp_directory_path() /
                        ("logsel_accept_" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(root, ec);
  const fs::path run1 = root / "run1";
  const fs::path run2 = root / "run2";
  fs::create_directories(run1);
  fs::create_directories(run2);

  const std::string args =
      " run-all --seed 5 --machines 4 --days 90 --codes 120 --relevant 6"
      " --kind mixed --fault-day 75 --out out";
  for (const auto& dir : {run1, run2}) {
    const std::string command =
        "cd " + dir.string() + " && " + cli.string() + args + " > cli.log 2>&1";
    if (std::system(command.c_str()) != 0) {
      detail = "run-all failed in " + dir.string();
      return false;
    }
  }

  std::map<std::string, fs::path> files1, files2;
  for (const auto& entry : fs::recursive_directory_iterator(run1 / "out")) {
    if (entry.is_regular_file()) {
      files1[fs::relative(entry.path(), run1 / "out").string()] = entry.path();
    }
  }
  for (const auto& entry : fs::recursive_directory_iterator(run2 / "out")) {
    if (entry.is_regular_file()) {
      files2[fs::relative(entry.path(), run2 / "out").string()] = entry.path();
    }
  }
  if (files1.empty() || files1.size() != files2.size()) {
    detail = "output file sets differ (" + std::to_string(files1.size()) + " vs " +
             std::to_string(files2.size()) + ")";
    return false;
  }
  for (const auto& [name, path1] : files1) {
    const auto it = files2.find(name);
    if (it == files2.end()) {
      detail = "file " + name + " missing from the second run";
      return false;
    }
    if (read_bytes(path1) != read_bytes(it->second)) {
      detail = "file " + name + " differs between runs";
      return false;
    }
  }
  fs::remove_all(root, ec);
  detail = std::to_string(files1.size()) + " result files byte-identical across reruns";
  return true;
}

// --- criterion 8: count conservation ------------------------------------------

bool conserve_one(const Dataset& dataset, std::string& detail) {
  for (const auto& machine : dataset.machines) {
    std::map<std::string, std::int64_t> expected;
    for (const auto& r : dataset.logs) {
      if (r.machine == machine) ++expected[r.code];
    }
    const auto events = vectorize_events(dataset, machine, dataset.span);
    if (events.size() != expected.size()) {
      detail = "code set mismatch on " + machine;
      return false;
    }
    for (const auto& series : events) {
      const auto total =
          std::accumulate(series.counts.begin(), series.counts.end(), std::int64_t{0});
      if (total != expected[series.code]) {
        detail = "count sum mismatch on " + machine + "/" + series.code;
        return false;
      }
    }

    const auto matrix = build_count_matrix(events, select_all(events), dataset.span);
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      std::int64_t column = 0;
      for (std::size_t i = 0; i < matrix.rows(); ++i) column += matrix.at(i, j);
      if (column != expected[matrix.codes[j]]) {
        detail = "matrix column mismatch on " + machine + "/" + matrix.codes[j];
        return false;
      }
    }
  }
  return true;
}

bool criterion_conservation(std::string& detail) {
  int machines_checked = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.days = 90;
    spec.n_codes = 80;
    spec.n_relevant = 6;
    spec.fault_day = 75;
    spec.fault_kind = seed % 2 ? FaultKind::Gradual : FaultKind::Sudden;
    const auto [dataset, truth] = generate(spec);
    if (!conserve_one(dataset, detail)) return false;
    machines_checked += static_cast<int>(dataset.machines.size());
  }
  {
    ScenarioSpec spec;
    spec.seed = 4;
    spec.days = 90;
    spec.n_codes = 80;
    spec.n_relevant = 6;
    spec.fault_day = 75;
    const auto [dataset, truth] = generate_fleet(
        spec, {FaultKind::Gradual, FaultKind::Sudden, FaultKind::Gradual, FaultKind::Sudden});
    if (!conserve_one(dataset, detail)) return false;
    machines_checked += static_cast<int>(dataset.machines.size());
  }
  detail = "counts conserved end to end on " + std::to_string(machines_checked) + " machines";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path cli = argc > 1 ? fs::absolute(argv[1]) : fs::path();

  struct Criterion {
    const char* name;
    bool passed;
    std::string detail;
  };
  std::vector<Criterion> results;

  const auto run = [&](const char* name, auto&& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    results.push_back({name, ok, std::move(detail)});
  };

  run("1 kendall tau oracle", [](std::string& d) { return criterion_tau_oracle(d); });
  run("2 detector identities",
      [](std::string& d) { return criterion_detector_identities(d); });
  run("3 invariance suite", [](std::string& d) { return criterion_invariances(d); });
  run("4 knn oracle", [](std::string& d) { return criterion_knn_oracle(d); });
  run("5 planted recovery", [](std::string& d) { return criterion_planted_recovery(d); });
  run("6 fleet comparison", [](std::string& d) { return criterion_fleet_comparison(d); });
  run("7 determinism", [&](std::string& d) { return criterion_determinism(cli, d); });
  run("8 conservation", [](std::string& d) { return criterion_conservation(d); });

  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %s: %s\n", r.passed ? "PASS" : "FAIL", r.name,
                r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
