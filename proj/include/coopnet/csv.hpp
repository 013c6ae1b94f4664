#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace coopnet {

// Full-precision, locale-independent number formatting ('.' decimal point).
std::string format_number(double value);

// Rows rendered under a fixed header; number formatting via format_number
// keeps output byte-stable across runs.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::string header);

  CsvBuilder& cell(const std::string& value);
  CsvBuilder& cell(double value);
  CsvBuilder& cell(int value);
  void end_row();

  std::string str() const;

 private:
  std::string out_;
  bool row_open_ = false;
};

// write-temp-then-rename; the target never holds partial content.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace coopnet
