#include "smelldep/support/table.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smelldep {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // normalize -0
  double intpart;
  if (std::modf(v, &intpart) == 0.0 && std::abs(v) < 1e15)
    return std::to_string(static_cast<long long>(intpart));
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, end);
}

static bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_.push_back(',');
    if (needs_quoting(cells[i])) {
      out_.push_back('"');
      for (char c : cells[i]) {
        if (c == '"') out_.push_back('"');
        out_.push_back(c);
      }
      out_.push_back('"');
    } else {
      out_ += cells[i];
    }
  }
  out_.push_back('\n');
}

void CsvWriter::header(std::vector<std::string> names) {
  width_ = names.size();
  emit(names);
}

void CsvWriter::row(std::vector<std::string> cells) {
  if (width_ && cells.size() != width_)
    throw std::logic_error("CsvWriter: row width " + std::to_string(cells.size()) +
                           " != header width " + std::to_string(width_));
  emit(cells);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for read: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void CsvWriter::write_file(const std::string& path) const { write_text_file(path, out_); }

}  // namespace smelldep
