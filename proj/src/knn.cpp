#include "logsel/knn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "logsel/errors.hpp"

namespace logsel {

AnomalyResult knn_scores(const EventCountMatrix& matrix, int k) {
  const std::size_t rows = matrix.rows();
  if (rows < 2) throw TooFewRowsError(rows);
  if (k < 1 || static_cast<std::size_t>(k) >= rows) throw KTooLargeError(k, rows);

  const std::size_t cols = matrix.cols();
  AnomalyResult result;
  result.days = matrix.days;
  result.scores.resize(rows);

  std::vector<double> dists(rows - 1);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < rows; ++j) {
      if (j == i) continue;
      double sum = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        const double d = static_cast<double>(matrix.at(i, c) - matrix.at(j, c));
        sum += d * d;
      }
      dists[m++] = sum;
    }
    auto kth = dists.begin() + (k - 1);
    std::nth_element(dists.begin(), kth, dists.end());
    result.scores[i] = std::sqrt(*kth);
  }

  std::size_t top = 0;
  for (std::size_t i = 1; i < rows; ++i) {
    if (result.scores[i] > result.scores[top]) top = i;
  }
  result.top_day = result.days[top];
  return result;
}

void write_anomaly_csv(const std::filesystem::path& path, const AnomalyResult& result) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "day,score\n";
  char buf[64];
  for (std::size_t i = 0; i < result.days.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", result.scores[i]);
    out << format_day(result.days[i]) << ',' << buf << '\n';
  }
}

void write_anomaly_json(const std::filesystem::path& path, const AnomalyResult& result, int k) {
  double top_score = 0.0;
  for (std::size_t i = 0; i < result.days.size(); ++i) {
    if (result.days[i] == result.top_day) {
      top_score = result.scores[i];
      break;
    }
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << nlohmann::json{{"k", k},
                        {"days", result.days.size()},
                        {"top_day", format_day(result.top_day)},
                        {"top_score", top_score}}
             .dump(2)
      << '\n';
}

}  // namespace logsel
