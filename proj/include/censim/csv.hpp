#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace censim {

// Round-trip exact serialization: 17 significant digits.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Accumulates a CSV document in memory; save() writes it in one shot, so a
// failure mid-computation never leaves a partial file behind.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string> header) {
    bool first = true;
    for (const std::string& name : header) {
      if (!first) body_ += ',';
      body_ += name;
      first = false;
    }
    body_ += '\n';
  }

  void begin_row() { at_row_start_ = true; }

  void add(const std::string& cell) {
    if (!at_row_start_) body_ += ',';
    body_ += cell;
    at_row_start_ = false;
  }

  void add(double x) { add(format_double(x)); }
  void add(int x) { add(std::to_string(x)); }
  void add(long long x) { add(std::to_string(x)); }
  void add(unsigned long long x) { add(std::to_string(x)); }
  void add(bool x) { add(std::string(x ? "1" : "0")); }

  void end_row() { body_ += '\n'; }

  const std::string& content() const { return body_; }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + path);
    }
    out << body_;
    if (!out) {
      throw std::runtime_error("failed writing output file: " + path);
    }
  }

 private:
  std::string body_;
  bool at_row_start_ = true;
};

}  // namespace censim
