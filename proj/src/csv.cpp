#include "logsel/csv.hpp"

#include <algorithm>

#include "logsel/errors.hpp"

namespace logsel {

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv_record(std::string_view record) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < record.size(); ++i) {
    const char c = record[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < record.size() && record[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

CsvReader::CsvReader(const std::filesystem::path& path) : in_(path) {
  if (!in_) throw IoError("cannot open " + path.string());
  std::string line;
  if (!read_raw_record(line)) throw EmptyFileError(path.string());
  header_ = split_csv_record(line);
}

int CsvReader::column(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) return -1;
  return static_cast<int>(it - header_.begin());
}

bool CsvReader::read_raw_record(std::string& out) {
  out.clear();
  std::string line;
  bool got_any = false;
  while (std::getline(in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (got_any) out.push_back('\n');
    out += line;
    got_any = true;
    // A record continues across lines while an opening quote is unmatched.
    const std::size_t quotes = static_cast<std::size_t>(
        std::count(out.begin(), out.end(), '"'));
    if (quotes % 2 == 0) return true;
  }
  return got_any;
}

bool CsvReader::next(std::vector<std::string>& fields) {
  std::string raw;
  while (read_raw_record(raw)) {
    if (raw.empty()) continue;  // skip blank lines
    fields = split_csv_record(raw);
    ++record_number_;
    return true;
  }
  return false;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
}

void CsvWriter::write_record(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_.put(',');
    out_ << csv_escape(fields[i]);
  }
  out_.put('\n');
}

}  // namespace logsel
