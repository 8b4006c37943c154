#include "smelldep/support/jsonl.hpp"

#include <stdexcept>

#include "smelldep/support/table.hpp"

namespace smelldep {

std::string JsonlFile::render(const std::string& format_name, const nlohmann::json& config,
                              const std::vector<nlohmann::json>& records) {
  nlohmann::json header = {{"format", format_name}, {"version", kVersion}, {"config", config}};
  std::string out = header.dump();
  out.push_back('\n');
  for (const auto& r : records) {
    out += r.dump();
    out.push_back('\n');
  }
  return out;
}

JsonlFile::Parsed JsonlFile::parse(const std::string& text, const std::string& expected_format) {
  Parsed parsed;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("bad JSONL at line " + std::to_string(line_no) + ": " + e.what());
    }
    if (line_no == 1) {
      if (!j.is_object() || j.value("format", "") != expected_format)
        throw std::runtime_error("fact file header is not format '" + expected_format + "'");
      if (j.value("version", -1) != kVersion)
        throw std::runtime_error("unsupported fact file version in " + expected_format);
      parsed.header = std::move(j);
    } else {
      parsed.records.push_back(std::move(j));
    }
  }
  if (parsed.header.is_null())
    throw std::runtime_error("empty fact file, expected format '" + expected_format + "'");
  return parsed;
}

JsonlFile::Parsed JsonlFile::parse_file(const std::string& path,
                                        const std::string& expected_format) {
  try {
    return parse(read_text_file(path), expected_format);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace smelldep
