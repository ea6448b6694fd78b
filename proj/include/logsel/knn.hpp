#pragma once

#include <filesystem>
#include <vector>

#include "logsel/countmatrix.hpp"

namespace logsel {

struct AnomalyResult {
  std::vector<Day> days;
  std::vector<double> scores;
  Day top_day = 0;  // earliest day achieving the maximum score
};

// Distance-based outlier score: Euclidean distance from each row to its k-th
// nearest neighbor among the other rows. Exact brute-force search.
AnomalyResult knn_scores(const EventCountMatrix& matrix, int k);

void write_anomaly_csv(const std::filesystem::path& path, const AnomalyResult& result);
void write_anomaly_json(const std::filesystem::path& path, const AnomalyResult& result, int k);

}  // namespace logsel
