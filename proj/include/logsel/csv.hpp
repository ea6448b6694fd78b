#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace logsel {

// Minimal RFC 4180 handling: comma separator, double-quote escaping, quoted
// fields may contain commas, quotes, and newlines.
std::string csv_escape(std::string_view field);
std::vector<std::string> split_csv_record(std::string_view record);

class CsvReader {
 public:
  // Reads and keeps the header row. Throws IoError if the file cannot be
  // opened and EmptyFileError if it contains no header row.
  explicit CsvReader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }

  // Index of a header column, or -1 when absent.
  int column(std::string_view name) const;

  // Reads the next data record. Returns false at end of file.
  bool next(std::vector<std::string>& fields);

  // 1-based index of the data record most recently returned by next().
  std::size_t record_number() const { return record_number_; }

 private:
  bool read_raw_record(std::string& out);

  std::ifstream in_;
  std::vector<std::string> header_;
  std::size_t record_number_ = 0;
};

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void write_record(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
};

}  // namespace logsel
