#include "smelldep/report/config.hpp"

#include <stdexcept>

#include "smelldep/support/table.hpp"

namespace smelldep::report {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::runtime_error("analysis config: " + msg);
}

}  // namespace

AnalysisConfig AnalysisConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("expected a JSON object");
  AnalysisConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "thresholds") {
      cfg.thresholds = metrics::ThresholdConfig::from_json(value);
    } else if (key == "exclude") {
      if (!value.is_array()) bad("'exclude' must be an array of globs");
      for (const auto& g : value) {
        if (!g.is_string() || g.get<std::string>().empty()) {
          bad("'exclude' entries must be nonempty strings");
        }
        cfg.exclude.push_back(g.get<std::string>());
      }
    } else if (key == "alpha") {
      if (!value.is_number()) bad("'alpha' must be a number");
      cfg.alpha = value.get<double>();
      if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) bad("'alpha' must lie in (0, 1)");
    } else if (key == "exact_cutoff") {
      if (!value.is_number_integer()) bad("'exact_cutoff' must be an integer");
      cfg.exact_cutoff = value.get<int>();
      if (cfg.exact_cutoff != 16) {
        bad("'exact_cutoff' is pinned at 16: the statistics layer switches from the "
            "exact to the approximate Mann-Whitney p there, and the value is "
            "recorded rather than tunable");
      }
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) bad("'seed' must be a nonnegative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out_dir") {
      if (!value.is_string() || value.get<std::string>().empty()) {
        bad("'out_dir' must be a nonempty string");
      }
      cfg.out_dir = value.get<std::string>();
    } else if (key == "typology_all_cells") {
      if (!value.is_boolean()) bad("'typology_all_cells' must be a boolean");
      cfg.typology_all_cells = value.get<bool>();
    } else if (key == "typology_include_same") {
      if (!value.is_boolean()) bad("'typology_include_same' must be a boolean");
      cfg.typology_include_same = value.get<bool>();
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  return cfg;
}

AnalysisConfig AnalysisConfig::load_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json AnalysisConfig::to_json() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["exact_cutoff"] = exact_cutoff;
  j["exclude"] = exclude;
  j["out_dir"] = out_dir;
  j["seed"] = seed;
  j["thresholds"] = thresholds.to_json();
  j["typology_all_cells"] = typology_all_cells;
  j["typology_include_same"] = typology_include_same;
  return j;
}

}  // namespace smelldep::report
