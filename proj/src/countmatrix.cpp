#include "logsel/countmatrix.hpp"

#include <unordered_map>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

EventCountMatrix build_count_matrix(const std::vector<EventSeries>& events,
                                    const SelectionResult& selection, DayRange span) {
  if (selection.selected.empty()) throw EmptySelectionError();

  std::unordered_map<std::string, const EventSeries*> by_code;
  for (const auto& e : events) by_code.emplace(e.code, &e);

  EventCountMatrix matrix;
  matrix.codes = selection.selected;
  const std::size_t n_days = static_cast<std::size_t>(span.length());
  matrix.days.reserve(n_days);
  for (Day d = span.first; d <= span.last; ++d) matrix.days.push_back(d);
  matrix.values.assign(n_days * matrix.codes.size(), 0);

  for (std::size_t j = 0; j < matrix.codes.size(); ++j) {
    const auto it = by_code.find(matrix.codes[j]);
    if (it == by_code.end()) throw UnknownCodeError(matrix.codes[j]);
    const EventSeries& series = *it->second;
    if (!(series.span == span)) {
      throw SpanMismatchError("series for " + series.code + " covers " +
                              format_day(series.span.first) + ".." +
                              format_day(series.span.last) + ", matrix wants " +
                              format_day(span.first) + ".." + format_day(span.last));
    }
    for (std::size_t i = 0; i < n_days; ++i) {
      matrix.values[i * matrix.codes.size() + j] = series.counts[i];
    }
  }
  return matrix;
}

SelectionResult select_all(const std::vector<EventSeries>& events) {
  SelectionResult result;
  result.threshold_used = 1.0;
  result.stage = Stage::Relevance;
  result.selected.reserve(events.size());
  for (const auto& e : events) result.selected.push_back(e.code);
  return result;
}

void write_count_matrix_csv(const std::filesystem::path& path, const EventCountMatrix& matrix) {
  CsvWriter writer(path);
  std::vector<std::string> header{"day"};
  header.insert(header.end(), matrix.codes.begin(), matrix.codes.end());
  writer.write_record(header);
  std::vector<std::string> row(matrix.cols() + 1);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    row[0] = format_day(matrix.days[i]);
    for (std::size_t j = 0; j < matrix.cols(); ++j) row[j + 1] = std::to_string(matrix.at(i, j));
    writer.write_record(row);
  }
}

}  // namespace logsel
