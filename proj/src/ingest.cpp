#include "logsel/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "logsel/csv.hpp"
#include "logsel/errors.hpp"

namespace logsel {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

int require_column(const CsvReader& reader, const std::string& name) {
  const int idx = reader.column(name);
  if (idx < 0) throw MissingColumnError(name);
  return idx;
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

// Accepts "P_3", "P3", or plain "3".
bool parse_position(std::string_view text, int& out) {
  std::string_view digits = text;
  if (!digits.empty() && (digits[0] == 'P' || digits[0] == 'p')) {
    digits.remove_prefix(1);
    if (!digits.empty() && digits[0] == '_') digits.remove_prefix(1);
  }
  if (digits.empty()) return false;
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return false;
  if (value < 1) return false;
  out = value;
  return true;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Low: return "Low";
    case Severity::Medium: return "Medium";
    case Severity::High: return "High";
    case Severity::Unknown: break;
  }
  return "Unknown";
}

std::string_view to_string(Robot r) {
  return r == Robot::Load ? "Load" : "Unload";
}

Severity severity_from(std::string_view text) {
  const std::string t = lower(text);
  if (t == "low") return Severity::Low;
  if (t == "medium") return Severity::Medium;
  if (t == "high") return Severity::High;
  return Severity::Unknown;
}

bool robot_from(std::string_view text, Robot& out) {
  const std::string t = lower(text);
  if (t == "load") {
    out = Robot::Load;
    return true;
  }
  if (t == "unload") {
    out = Robot::Unload;
    return true;
  }
  return false;
}

LogReadResult read_log_csv(const std::filesystem::path& path, const LogColumns& columns,
                           bool strict) {
  CsvReader reader(path);
  const int c_machine = require_column(reader, columns.machine);
  const int c_code = require_column(reader, columns.code);
  const int c_severity = require_column(reader, columns.severity);
  const int c_detail = require_column(reader, columns.detail);
  const int c_datetime = require_column(reader, columns.datetime);
  const std::size_t width = static_cast<std::size_t>(
      std::max({c_machine, c_code, c_severity, c_detail, c_datetime})) + 1;

  LogReadResult result;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::size_t record = reader.record_number();
    if (fields.size() < width) {
      if (strict) throw BadValueError(record, "row has too few fields");
      result.errors.push_back({record, "too few fields"});
      continue;
    }
    const std::string& ts_text = fields[static_cast<std::size_t>(c_datetime)];
    const auto ts = try_parse_timestamp(ts_text);
    if (!ts) {
      if (strict) throw BadTimestampError(record, ts_text);
      result.errors.push_back({record, "bad timestamp \"" + ts_text + "\""});
      continue;
    }
    std::string code = fields[static_cast<std::size_t>(c_code)];
    if (code.empty()) {
      if (strict) throw BadValueError(record, "empty event code");
      result.errors.push_back({record, "empty event code"});
      continue;
    }
    LogRecord rec;
    rec.machine = fields[static_cast<std::size_t>(c_machine)];
    rec.code = std::move(code);
    rec.severity = severity_from(fields[static_cast<std::size_t>(c_severity)]);
    rec.detail = fields[static_cast<std::size_t>(c_detail)];
    rec.ts = *ts;
    result.records.push_back(std::move(rec));
  }
  return result;
}

SensorReadResult read_sensor_csv(const std::filesystem::path& path,
                                 const SensorColumns& columns, int declared_positions,
                                 bool strict) {
  CsvReader reader(path);
  const int c_robot = require_column(reader, columns.robot);
  const int c_position = require_column(reader, columns.position);
  const int c_value = require_column(reader, columns.value);
  const int c_datetime = require_column(reader, columns.datetime);
  const int c_machine = reader.column(columns.machine);  // optional
  const std::size_t width = static_cast<std::size_t>(
      std::max({c_robot, c_position, c_value, c_datetime, c_machine})) + 1;

  SensorReadResult result;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::size_t record = reader.record_number();
    if (fields.size() < width) {
      if (strict) throw BadValueError(record, "row has too few fields");
      result.errors.push_back({record, "too few fields"});
      continue;
    }
    SensorRecord rec;
    if (!robot_from(fields[static_cast<std::size_t>(c_robot)], rec.robot)) {
      if (strict) throw BadValueError(record, fields[static_cast<std::size_t>(c_robot)]);
      result.errors.push_back(
          {record, "bad robot \"" + fields[static_cast<std::size_t>(c_robot)] + "\""});
      continue;
    }
    if (!parse_position(fields[static_cast<std::size_t>(c_position)], rec.position)) {
      if (strict) throw BadValueError(record, fields[static_cast<std::size_t>(c_position)]);
      result.errors.push_back(
          {record, "bad position \"" + fields[static_cast<std::size_t>(c_position)] + "\""});
      continue;
    }
    if (declared_positions > 0 && rec.position > declared_positions) {
      if (strict) throw PositionOutOfRangeError(record, rec.position, declared_positions);
      result.errors.push_back(
          {record, "position " + std::to_string(rec.position) + " outside declared 1.." +
                       std::to_string(declared_positions)});
      continue;
    }
    if (!parse_double(fields[static_cast<std::size_t>(c_value)], rec.value)) {
      if (strict) throw BadValueError(record, fields[static_cast<std::size_t>(c_value)]);
      result.errors.push_back(
          {record, "bad value \"" + fields[static_cast<std::size_t>(c_value)] + "\""});
      continue;
    }
    const std::string& ts_text = fields[static_cast<std::size_t>(c_datetime)];
    const auto ts = try_parse_timestamp(ts_text);
    if (!ts) {
      if (strict) throw BadTimestampError(record, ts_text);
      result.errors.push_back({record, "bad timestamp \"" + ts_text + "\""});
      continue;
    }
    rec.ts = *ts;
    if (c_machine >= 0) rec.machine = fields[static_cast<std::size_t>(c_machine)];
    result.records.push_back(std::move(rec));
  }
  return result;
}

Dataset build_dataset(std::vector<LogRecord> logs, std::vector<SensorRecord> sensors) {
  if (logs.empty() && sensors.empty()) throw EmptyDatasetError();

  Dataset ds;
  ds.logs = std::move(logs);
  ds.sensors = std::move(sensors);

  Day lo = std::numeric_limits<Day>::max();
  Day hi = std::numeric_limits<Day>::min();
  for (const auto& r : ds.logs) {
    lo = std::min(lo, day_of(r.ts));
    hi = std::max(hi, day_of(r.ts));
  }
  for (const auto& r : ds.sensors) {
    lo = std::min(lo, day_of(r.ts));
    hi = std::max(hi, day_of(r.ts));
  }
  ds.span = {lo, hi};

  for (const auto& r : ds.logs) ds.machines.push_back(r.machine);
  std::sort(ds.machines.begin(), ds.machines.end());
  ds.machines.erase(std::unique(ds.machines.begin(), ds.machines.end()), ds.machines.end());
  return ds;
}

Dataset filter_machine(const Dataset& dataset, const std::string& machine) {
  std::vector<LogRecord> logs;
  std::copy_if(dataset.logs.begin(), dataset.logs.end(), std::back_inserter(logs),
               [&](const LogRecord& r) { return r.machine == machine; });
  std::vector<SensorRecord> sensors;
  std::copy_if(dataset.sensors.begin(), dataset.sensors.end(), std::back_inserter(sensors),
               [&](const SensorRecord& r) { return r.machine.empty() || r.machine == machine; });
  return build_dataset(std::move(logs), std::move(sensors));
}

void write_log_csv(const std::filesystem::path& path, const std::vector<LogRecord>& records,
                   const LogColumns& columns) {
  CsvWriter writer(path);
  writer.write_record({columns.machine, columns.code, columns.severity, columns.detail,
                       columns.datetime});
  for (const auto& r : records) {
    writer.write_record({r.machine, r.code, std::string(to_string(r.severity)), r.detail,
                         format_timestamp(r.ts)});
  }
}

void write_sensor_csv(const std::filesystem::path& path,
                      const std::vector<SensorRecord>& records,
                      const SensorColumns& columns) {
  const bool with_machine = std::any_of(records.begin(), records.end(),
                                        [](const SensorRecord& r) { return !r.machine.empty(); });
  CsvWriter writer(path);
  std::vector<std::string> header;
  if (with_machine) header.push_back(columns.machine);
  header.insert(header.end(), {columns.robot, columns.position, columns.value, columns.datetime});
  writer.write_record(header);
  for (const auto& r : records) {
    std::vector<std::string> row;
    if (with_machine) row.push_back(r.machine);
    row.push_back(std::string(to_string(r.robot)));
    row.push_back("P_" + std::to_string(r.position));
    row.push_back(format_double(r.value));
    row.push_back(format_timestamp(r.ts));
    writer.write_record(row);
  }
}

}  // namespace logsel
