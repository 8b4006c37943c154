#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smelldep/report/config.hpp"

namespace smelldep::report {

// What a stage did per project. A failed project is skipped and logged, the
// rest of the corpus proceeds; global problems (unreadable manifest, no
// projects, no facts) throw std::runtime_error instead.
struct RunStatus {
  std::vector<std::string> processed;                        // project ids, in run order
  std::vector<std::pair<std::string, std::string>> skipped;  // id, reason
  bool complete() const { return skipped.empty(); }

  void merge(const RunStatus& other);
};

struct PipelineOptions {
  std::string manifest_path;           // extract, detect, run-all
  AnalysisConfig config;               // effective settings (overrides applied)
  std::vector<std::string> projects;   // restrict to these ids; empty = all
  std::vector<std::string> pairs;      // restrict to these pair labels; empty = all
};

// extract: parse each project's production sources, emit artifacts.ndjson
// and dependencies.ndjson.
RunStatus run_extract(const PipelineOptions& options);

// detect: parse again (metric rules read method bodies, which fact files do
// not carry), emit smells.ndjson.
RunStatus run_detect(const PipelineOptions& options);

// interact: reload per-project facts — no parsing — and emit
// interactions.ndjson with every pair dataset and interaction frequency.
RunStatus run_interact(const PipelineOptions& options);

// analyze: reload all interaction facts and emit the corpus-wide
// results.ndjson. Throws when no project has interaction facts.
RunStatus run_analyze(const PipelineOptions& options);

// report: re-render the report bundle from results.ndjson.
RunStatus run_report(const PipelineOptions& options);

// sample: draw the stratified manual-validation sample of smell instances
// (10% margin of error, 95% confidence) and emit sample.csv + sample.json.
RunStatus run_sample(const PipelineOptions& options);

// run-all: the five stages in order within one process. Each project is
// parsed once; the emitted files are byte-identical to staged runs because
// every stage's output is a pure function of inputs the fact files round-trip.
RunStatus run_all(const PipelineOptions& options);

}  // namespace smelldep::report
