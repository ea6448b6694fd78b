#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logsel {

// Base class for every error raised by the library. CLI maps these to exit
// code 2 (data error); anything else is a programming error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

struct EmptyFileError : Error {
  explicit EmptyFileError(const std::string& path)
      : Error("empty file (no header row): " + path) {}
};

struct MissingColumnError : Error {
  explicit MissingColumnError(const std::string& column)
      : Error("missing column: " + column) {}
};

struct BadTimestampError : Error {
  BadTimestampError(std::size_t record, const std::string& text)
      : Error("record " + std::to_string(record) + ": bad timestamp \"" + text + "\"") {}
  explicit BadTimestampError(const std::string& text)
      : Error("bad timestamp \"" + text + "\"") {}
};

struct BadValueError : Error {
  BadValueError(std::size_t record, const std::string& text)
      : Error("record " + std::to_string(record) + ": bad value \"" + text + "\"") {}
};

struct PositionOutOfRangeError : Error {
  PositionOutOfRangeError(std::size_t record, int position, int declared)
      : Error("record " + std::to_string(record) + ": position " +
              std::to_string(position) + " outside declared 1.." + std::to_string(declared)) {}
};

struct EmptyDatasetError : Error {
  EmptyDatasetError() : Error("dataset has no records") {}
};

struct NoRecordsForMachineError : Error {
  explicit NoRecordsForMachineError(const std::string& machine)
      : Error("no log records for machine \"" + machine + "\" in the requested span") {}
};

struct NoSensorDataError : Error {
  explicit NoSensorDataError(const std::string& what)
      : Error("no sensor data: " + what) {}
};

struct TooShortError : Error {
  TooShortError(const std::string& what, std::size_t n, std::size_t need)
      : Error(what + ": length " + std::to_string(n) + " is shorter than " +
              std::to_string(need)) {}
};

struct SpanMismatchError : Error {
  explicit SpanMismatchError(const std::string& what)
      : Error("span mismatch: " + what) {}
};

struct EmptyReportError : Error {
  EmptyReportError() : Error("relevance report is empty") {}
};

struct BadFractionError : Error {
  explicit BadFractionError(double fraction)
      : Error("fraction " + std::to_string(fraction) + " outside (0, 1]") {}
};

struct EmptySelectionError : Error {
  EmptySelectionError() : Error("selection is empty") {}
};

struct UnknownCodeError : Error {
  explicit UnknownCodeError(const std::string& code)
      : Error("selected code not present among event series: " + code) {}
};

struct KTooLargeError : Error {
  KTooLargeError(int k, std::size_t rows)
      : Error("k = " + std::to_string(k) + " must be in 1..rows-1 (rows = " +
              std::to_string(rows) + ")") {}
};

struct TooFewRowsError : Error {
  explicit TooFewRowsError(std::size_t rows)
      : Error("matrix needs at least 2 rows, got " + std::to_string(rows)) {}
};

struct DateOutOfRangeError : Error {
  explicit DateOutOfRangeError(const std::string& what)
      : Error("date out of range: " + what) {}
};

struct BadSpecError : Error {
  explicit BadSpecError(const std::string& what)
      : Error("bad scenario spec: " + what) {}
};

}  // namespace logsel
