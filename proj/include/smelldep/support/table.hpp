#pragma once

#include <string>
#include <vector>

namespace smelldep {

// Shortest round-trip decimal rendering of a double (std::to_chars), so the
// same value always prints the same bytes. Integral values print without an
// exponent or trailing ".0" ("3", not "3.0").
std::string format_double(double v);

// Minimal CSV writer: RFC-4180 quoting, '\n' terminators, rows written in
// call order. Numeric cells go through format_double for stable bytes.
class CsvWriter {
 public:
  void header(std::vector<std::string> names);
  void row(std::vector<std::string> cells);
  const std::string& str() const { return out_; }
  void write_file(const std::string& path) const;

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }

 private:
  void emit(const std::vector<std::string>& cells);
  std::string out_;
  std::size_t width_ = 0;
};

// Writes text to path only via a complete rewrite (truncate). Creates parent
// directories as needed.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace smelldep
