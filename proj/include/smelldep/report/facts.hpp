#pragma once

#include <array>
#include <string>
#include <vector>

#include "smelldep/deps/dependency.hpp"
#include "smelldep/interact/interaction.hpp"
#include "smelldep/model/code_model.hpp"
#include "smelldep/report/config.hpp"
#include "smelldep/smells/smells.hpp"
#include "smelldep/stats/stats.hpp"

namespace smelldep::report {

// The on-disk layout of one run. Per-project fact files live under
// facts/<project>/, the corpus-wide analysis under facts/, and the report
// bundle under report/. A project's directory is its id with every character
// outside [A-Za-z0-9._-] replaced by '_'; two ids colliding after that
// substitution is a configuration error surfaced at extraction time.
std::string project_dir_name(const std::string& project_id);

struct OutputLayout {
  std::string out_dir;

  std::string facts_dir() const { return out_dir + "/facts"; }
  std::string project_dir(const std::string& project_id) const {
    return facts_dir() + "/" + project_dir_name(project_id);
  }
  std::string artifact_facts(const std::string& project_id) const {
    return project_dir(project_id) + "/artifacts.ndjson";
  }
  std::string dependency_facts(const std::string& project_id) const {
    return project_dir(project_id) + "/dependencies.ndjson";
  }
  std::string smell_facts(const std::string& project_id) const {
    return project_dir(project_id) + "/smells.ndjson";
  }
  std::string interaction_facts(const std::string& project_id) const {
    return project_dir(project_id) + "/interactions.ndjson";
  }
  std::string result_facts() const { return facts_dir() + "/results.ndjson"; }
  std::string report_dir() const { return out_dir + "/report"; }
  std::string report_file(const std::string& name) const { return report_dir() + "/" + name; }

  // Sorted names of the project directories under facts/ that contain the
  // given fact file; empty when facts/ does not exist.
  std::vector<std::string> project_dirs_with(const std::string& fact_file) const;
};

// ---------------------------------------------------------------------------
// artifacts.ndjson ("smelldep-artifacts")
//
// A "project" record with the corpus totals, then one "artifact" record per
// artifact, sorted by id, each carrying its model index. Reloading rebuilds
// everything the interaction stage consumes — the artifact table in index
// order, member lists, the id lookup, and the totals — but no AST handles
// and no type entries: stages that need source bodies parse sources instead.

std::string render_artifact_facts(const model::CodeModel& model, const AnalysisConfig& config);
model::CodeModel load_artifact_facts(const std::string& path);

// ---------------------------------------------------------------------------
// dependencies.ndjson ("smelldep-dependencies")
//
// One "edge" record per dependency edge, in graph order, carrying its index,
// triple, endpoints, and site. Reloading rebuilds the lookup indexes the
// same way the extractor does and cross-checks each triple against the
// artifact kinds.

std::string render_dependency_facts(const deps::DependencyGraph& graph,
                                    const model::CodeModel& model, const AnalysisConfig& config);
deps::DependencyGraph load_dependency_facts(const std::string& path,
                                            const model::CodeModel& model);

// ---------------------------------------------------------------------------
// smells.ndjson ("smelldep-smells")
//
// The detection stage's products: one "method-metrics" record per callable,
// one "class-metrics" record per class, then one "instance" record per smell
// instance with the evidence its rule consulted. Reloading rebuilds the
// detection flags and both metric tables; thresholds come from the run
// configuration, which the loader receives rather than re-deriving.

std::string render_smell_facts(const smells::Detection& detection, const model::CodeModel& model,
                               const AnalysisConfig& config);
smells::Detection load_smell_facts(const std::string& path, const model::CodeModel& model,
                                   const AnalysisConfig& config);

// ---------------------------------------------------------------------------
// interactions.ndjson ("smelldep-interactions")
//
// A "project" record with per-project counts, twenty "frequency" records
// (every ordered smell pair), then one "interaction" record per interacting
// artifact pair, grouped by smell pair in canonical order. Interaction edges
// carry their dependency triple and flow direction, so the analysis stage
// reloads straight into statistics views without touching the graph.

struct FrequencyCell {
  smells::SmellKind cs1 = smells::SmellKind::FE;
  smells::SmellKind cs2 = smells::SmellKind::FE;
  int interacting = 0;
  int total = 0;
};

// The "project" record: identity plus the counts the run summary reports.
struct ProjectSummaryFacts {
  std::string id;
  int types = 0;
  int methods = 0;
  int loc = 0;
  int artifacts = 0;
  int edges = 0;
  std::array<int, smells::kSmellKindCount> smell_counts{};
};

struct InteractionFacts {
  ProjectSummaryFacts project;
  std::vector<FrequencyCell> frequencies;
  // One view per canonical smell pair (always all ten, possibly empty).
  std::vector<stats::DatasetView> datasets;
};

std::string render_interaction_facts(const model::CodeModel& model,
                                     const deps::DependencyGraph& graph,
                                     const smells::Detection& detection,
                                     const std::vector<interact::PairDataset>& datasets,
                                     const std::vector<FrequencyCell>& frequencies,
                                     const AnalysisConfig& config);
InteractionFacts load_interaction_facts(const std::string& path);

}  // namespace smelldep::report
