#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logsel/relevance.hpp"
#include "logsel/vectorize.hpp"

namespace logsel {

// Daily event counts over the selected codes: rows are days of the span,
// columns follow the selection order.
struct EventCountMatrix {
  std::vector<Day> days;
  std::vector<std::string> codes;
  std::vector<std::int64_t> values;  // row-major, |days| x |codes|

  std::int64_t at(std::size_t row, std::size_t col) const {
    return values[row * codes.size() + col];
  }
  std::size_t rows() const { return days.size(); }
  std::size_t cols() const { return codes.size(); }
};

EventCountMatrix build_count_matrix(const std::vector<EventSeries>& events,
                                    const SelectionResult& selection, DayRange span);

// Convenience: a selection covering every code of the given series, in their
// existing (lexicographic) order.
SelectionResult select_all(const std::vector<EventSeries>& events);

void write_count_matrix_csv(const std::filesystem::path& path, const EventCountMatrix& matrix);

}  // namespace logsel
