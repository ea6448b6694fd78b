#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "logsel/calendar.hpp"

namespace logsel {

enum class Severity { Low, Medium, High, Unknown };
enum class Robot { Load, Unload };

std::string_view to_string(Severity s);
std::string_view to_string(Robot r);
// Unrecognized severities map to Unknown; the record is kept.
Severity severity_from(std::string_view text);
bool robot_from(std::string_view text, Robot& out);

struct LogRecord {
  std::string machine;
  std::string code;
  Severity severity = Severity::Unknown;
  std::string detail;
  Timestamp ts = 0;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct SensorRecord {
  // Machine is not part of the single-machine table layout; fleet files may
  // carry an extra Machine column, otherwise it stays empty.
  std::string machine;
  Robot robot = Robot::Load;
  int position = 0;  // 1-based index k
  double value = 0.0;
  Timestamp ts = 0;

  friend bool operator==(const SensorRecord&, const SensorRecord&) = default;
};

struct Dataset {
  std::vector<LogRecord> logs;
  std::vector<SensorRecord> sensors;
  std::vector<std::string> machines;  // sorted, unique, from logs
  DayRange span{0, 0};
};

// Column-name maps; defaults match the canonical table layouts.
struct LogColumns {
  std::string machine = "Machine";
  std::string code = "Code";
  std::string severity = "Severity";
  std::string detail = "Detail";
  std::string datetime = "DateTime";
};

struct SensorColumns {
  std::string robot = "Robot";
  std::string position = "Position";
  std::string value = "Value";
  std::string datetime = "DateTime";
  std::string machine = "Machine";  // optional; used only when present
};

struct RowError {
  std::size_t record = 0;  // 1-based data record index
  std::string message;

  friend bool operator==(const RowError&, const RowError&) = default;
};

struct LogReadResult {
  std::vector<LogRecord> records;
  std::vector<RowError> errors;
};

struct SensorReadResult {
  std::vector<SensorRecord> records;
  std::vector<RowError> errors;
};

// Malformed rows are collected into the error report; strict mode turns the
// first malformed row into a thrown error instead. Missing columns and files
// without a header row always throw.
LogReadResult read_log_csv(const std::filesystem::path& path,
                           const LogColumns& columns = {}, bool strict = false);

// declared_positions > 0 enables the 1..K range check on position indices.
SensorReadResult read_sensor_csv(const std::filesystem::path& path,
                                 const SensorColumns& columns = {},
                                 int declared_positions = 0, bool strict = false);

Dataset build_dataset(std::vector<LogRecord> logs, std::vector<SensorRecord> sensors);

// Keeps log records of one machine plus the sensor records attributed to it
// (records without a machine tag belong to every machine).
Dataset filter_machine(const Dataset& dataset, const std::string& machine);

void write_log_csv(const std::filesystem::path& path, const std::vector<LogRecord>& records,
                   const LogColumns& columns = {});
void write_sensor_csv(const std::filesystem::path& path,
                      const std::vector<SensorRecord>& records,
                      const SensorColumns& columns = {});

}  // namespace logsel
