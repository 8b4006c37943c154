#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "smelldep/metrics/metrics.hpp"

namespace smelldep::report {

// Every knob of a pipeline run. The active configuration is embedded
// verbatim in each fact file's header and in the report bundle's index, so
// any output file names the exact settings that produced it.
struct AnalysisConfig {
  metrics::ThresholdConfig thresholds;

  // Extra corpus-wide exclusion globs, appended to the built-in
  // production-code filter and the manifest's own list.
  std::vector<std::string> exclude;

  // Two-sided significance level for every reported test.
  double alpha = 0.05;

  // Pooled-size bound of the exact Mann-Whitney path. Recorded for
  // reproducibility; only the pinned value 16 is accepted, because the
  // statistics layer freezes the exact/approximate switch there.
  int exact_cutoff = 16;

  // Seed for the stratified manual-validation sample.
  std::uint64_t seed = 0;

  // Root directory for fact files and reports (overridable with --out).
  std::string out_dir = "out";

  // Typology options: classify by the sign of every tested cell instead of
  // only the significant ones, and emit same-class rows next to the
  // different-class typology (an extension beyond the published table).
  bool typology_all_cells = false;
  bool typology_include_same = false;

  // Strict parse: unknown keys are errors, absent keys keep their defaults.
  // Throws std::runtime_error on malformed or out-of-range values.
  static AnalysisConfig from_json(const nlohmann::json& j);
  static AnalysisConfig load_file(const std::string& path);
  nlohmann::json to_json() const;
};

}  // namespace smelldep::report
