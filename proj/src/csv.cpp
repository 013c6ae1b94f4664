#include "coopnet/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coopnet/hash.hpp"

namespace coopnet {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_hex(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

CsvBuilder::CsvBuilder(std::string header) : out_(std::move(header)) { out_ += '\n'; }

CsvBuilder& CsvBuilder::cell(const std::string& value) {
  if (row_open_) out_ += ',';
  out_ += value;
  row_open_ = true;
  return *this;
}

CsvBuilder& CsvBuilder::cell(double value) { return cell(format_number(value)); }

CsvBuilder& CsvBuilder::cell(int value) { return cell(std::to_string(value)); }

void CsvBuilder::end_row() {
  out_ += '\n';
  row_open_ = false;
}

std::string CsvBuilder::str() const { return out_; }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace coopnet
