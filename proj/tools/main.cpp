#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smelldep/report/pipeline.hpp"
#include "smelldep/support/diag.hpp"

namespace {

using smelldep::report::AnalysisConfig;
using smelldep::report::PipelineOptions;
using smelldep::report::RunStatus;

struct CliState {
  std::string manifest;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> projects;
  std::vector<std::string> pairs;
  std::vector<CLI::Option*> out_options;
  std::vector<CLI::Option*> seed_options;
};

enum Needs : unsigned {
  kManifest = 1u << 0,
  kProject = 1u << 1,
  kPair = 1u << 2,
  kSeed = 1u << 3,
};

void add_common_options(CLI::App* sub, CliState& state, unsigned needs) {
  if (needs & kManifest) {
    sub->add_option("--manifest", state.manifest, "corpus manifest JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  }
  sub->add_option("--config", state.config_path, "analysis configuration JSON file")
      ->check(CLI::ExistingFile);
  state.out_options.push_back(
      sub->add_option("--out", state.out_dir, "output directory (overrides the config)"));
  if (needs & kSeed) {
    state.seed_options.push_back(
        sub->add_option("--seed", state.seed, "sampling RNG seed (overrides the config)"));
  }
  if (needs & kProject) {
    sub->add_option("--project", state.projects, "restrict to this project id (repeatable)");
  }
  if (needs & kPair) {
    sub->add_option("--pair", state.pairs,
                    "restrict interaction datasets to this smell pair, e.g. GC-DC (repeatable)");
  }
}

bool option_given(const std::vector<CLI::Option*>& options) {
  for (const CLI::Option* option : options) {
    if (option != nullptr && option->count() > 0) return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detects code smells in Java sources, extracts typed dependency edges, and "
               "analyzes how smells interact through them."};
  app.require_subcommand(1);
  CliState state;

  CLI::App* extract = app.add_subcommand(
      "extract", "Parse each project's production sources into artifact and dependency facts");
  add_common_options(extract, state, kManifest | kProject);

  CLI::App* detect = app.add_subcommand(
      "detect", "Compute metrics over each project's sources and emit smell facts");
  add_common_options(detect, state, kManifest | kProject);

  CLI::App* interact = app.add_subcommand(
      "interact", "Build interaction datasets and frequencies from persisted facts");
  add_common_options(interact, state, kProject | kPair);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Run the statistical study over all interaction facts");
  add_common_options(analyze, state, kProject);

  CLI::App* report = app.add_subcommand(
      "report", "Render the CSV/JSON report bundle from the analysis results");
  add_common_options(report, state, 0);

  CLI::App* sample = app.add_subcommand(
      "sample", "Draw the stratified manual-validation sample of smell instances");
  add_common_options(sample, state, kProject | kSeed);

  CLI::App* run_all = app.add_subcommand(
      "run-all", "Extract, detect, interact, analyze, and report in one process");
  add_common_options(run_all, state, kManifest | kProject | kPair | kSeed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    PipelineOptions options;
    options.manifest_path = state.manifest;
    if (!state.config_path.empty()) {
      options.config = AnalysisConfig::load_file(state.config_path);
    }
    if (option_given(state.out_options)) options.config.out_dir = state.out_dir;
    if (option_given(state.seed_options)) options.config.seed = state.seed;
    options.projects = state.projects;
    options.pairs = state.pairs;

    std::string stage;
    RunStatus status;
    if (app.got_subcommand(extract)) {
      stage = "extract";
      status = smelldep::report::run_extract(options);
    } else if (app.got_subcommand(detect)) {
      stage = "detect";
      status = smelldep::report::run_detect(options);
    } else if (app.got_subcommand(interact)) {
      stage = "interact";
      status = smelldep::report::run_interact(options);
    } else if (app.got_subcommand(analyze)) {
      stage = "analyze";
      status = smelldep::report::run_analyze(options);
    } else if (app.got_subcommand(report)) {
      stage = "report";
      status = smelldep::report::run_report(options);
    } else if (app.got_subcommand(sample)) {
      stage = "sample";
      status = smelldep::report::run_sample(options);
    } else {
      stage = "run-all";
      status = smelldep::report::run_all(options);
    }

    std::cout << stage << ": " << status.processed.size() << " project(s) processed, "
              << status.skipped.size() << " skipped\n";
    for (const auto& [id, reason] : status.skipped) {
      std::cout << "  skipped " << id << ": " << reason << "\n";
    }
    return status.complete() ? 0 : 2;
  } catch (const std::exception& e) {
    smelldep::log_error(e.what());
    return 1;
  }
}
