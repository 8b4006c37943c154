#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace smelldep {

// Fact files are JSON Lines: line 1 is a version header naming the format and
// embedding the configuration the run used; each following line is one record.
// nlohmann::json objects iterate in key order, so rendering is byte-stable.
struct JsonlFile {
  static constexpr int kVersion = 1;

  static std::string render(const std::string& format_name, const nlohmann::json& config,
                            const std::vector<nlohmann::json>& records);

  struct Parsed {
    nlohmann::json header;
    std::vector<nlohmann::json> records;
  };

  // Throws std::runtime_error on malformed input or a format/version mismatch.
  static Parsed parse(const std::string& text, const std::string& expected_format);
  static Parsed parse_file(const std::string& path, const std::string& expected_format);
};

}  // namespace smelldep
