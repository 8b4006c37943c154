#include "smelldep/report/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "smelldep/deps/dependency.hpp"
#include "smelldep/interact/interaction.hpp"
#include "smelldep/model/manifest.hpp"
#include "smelldep/model/resolve.hpp"
#include "smelldep/report/analysis.hpp"
#include "smelldep/report/facts.hpp"
#include "smelldep/report/report.hpp"
#include "smelldep/smells/smells.hpp"
#include "smelldep/stats/stats.hpp"
#include "smelldep/support/diag.hpp"
#include "smelldep/support/table.hpp"

namespace smelldep::report {

namespace {

using nlohmann::json;

model::CorpusManifest load_configured_manifest(const PipelineOptions& options) {
  if (options.manifest_path.empty()) throw std::runtime_error("this stage needs --manifest");
  model::CorpusManifest manifest = model::load_manifest(options.manifest_path);
  if (manifest.projects.empty()) {
    throw std::runtime_error("manifest " + options.manifest_path + ": no projects listed");
  }
  manifest.exclude.insert(manifest.exclude.end(), options.config.exclude.begin(),
                          options.config.exclude.end());
  std::map<std::string, std::string> dir_owner;
  for (const model::ProjectSpec& project : manifest.projects) {
    auto [it, inserted] = dir_owner.emplace(project_dir_name(project.id), project.id);
    if (!inserted) {
      throw std::runtime_error("projects '" + it->second + "' and '" + project.id +
                               "' map to the same fact directory '" + it->first + "'");
    }
  }
  return manifest;
}

// Applies --project: manifest order when empty, else the requested ids
// (deduplicated, unknown ids are configuration errors).
std::vector<model::ProjectSpec> select_projects(const model::CorpusManifest& manifest,
                                                const std::vector<std::string>& requested) {
  if (requested.empty()) return manifest.projects;
  std::vector<model::ProjectSpec> out;
  std::set<std::string> seen;
  for (const std::string& id : requested) {
    if (!seen.insert(id).second) continue;
    auto it = std::find_if(manifest.projects.begin(), manifest.projects.end(),
                           [&](const model::ProjectSpec& p) { return p.id == id; });
    if (it == manifest.projects.end()) {
      throw std::runtime_error("project '" + id + "' is not in the manifest");
    }
    out.push_back(*it);
  }
  return out;
}

// Applies --project to the fact directories on disk: every requested id must
// have facts already; empty means everything present, in sorted dir order.
std::vector<std::string> select_fact_dirs(const OutputLayout& layout,
                                          const std::string& fact_file,
                                          const std::vector<std::string>& requested,
                                          const std::string& hint) {
  std::vector<std::string> dirs = layout.project_dirs_with(fact_file);
  if (requested.empty()) {
    if (dirs.empty()) {
      throw std::runtime_error("no " + fact_file + " under " + layout.facts_dir() + " — " + hint);
    }
    return dirs;
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const std::string& id : requested) {
    std::string dir = project_dir_name(id);
    if (!seen.insert(dir).second) continue;
    if (std::find(dirs.begin(), dirs.end(), dir) == dirs.end()) {
      throw std::runtime_error("project '" + id + "' has no " + fact_file + " — " + hint);
    }
    out.push_back(dir);
  }
  return out;
}

// The smell pairs --pair keeps; empty means all ten. Labels must be
// canonical ("FE-GC": first smell earlier in kind order).
std::vector<interact::SmellPair> select_pairs(const std::vector<std::string>& requested) {
  if (requested.empty()) return interact::all_smell_pairs();
  std::vector<interact::SmellPair> out;
  std::set<std::string> seen;
  for (const std::string& label : requested) {
    if (!seen.insert(label).second) continue;
    bool found = false;
    for (const interact::SmellPair& pair : interact::all_smell_pairs()) {
      if (pair.label() == label) {
        out.push_back(pair);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("unknown smell pair '" + label +
                               "' (canonical labels pair the earlier smell first, e.g. GC-DC)");
    }
  }
  // Canonical dataset order regardless of the flag order.
  std::sort(out.begin(), out.end(), [](const interact::SmellPair& a, const interact::SmellPair& b) {
    if (a.cs1 != b.cs1) return static_cast<int>(a.cs1) < static_cast<int>(b.cs1);
    return static_cast<int>(a.cs2) < static_cast<int>(b.cs2);
  });
  return out;
}

struct ParsedProject {
  model::CodeModel model;
  std::vector<model::BodyFacts> facts;
};

ParsedProject parse_project(const model::CorpusManifest& manifest,
                            const model::ProjectSpec& project) {
  ParsedProject out;
  std::vector<model::SourceFile> sources = model::load_project_sources(manifest, project);
  out.model = model::build_code_model(project.id, sources);
  std::size_t parse_errors = out.model.diagnostics.count("parse-error");
  if (parse_errors > 0) {
    log_warn(project.id + ": " + std::to_string(parse_errors) + " file(s) skipped as unparseable");
  }
  Diagnostics body_diags;
  out.facts = model::collect_body_facts(out.model, body_diags);
  log_info(project.id + ": " + std::to_string(out.model.artifacts.size()) + " artifacts from " +
           std::to_string(sources.size()) + " files");
  return out;
}

std::vector<FrequencyCell> all_frequencies(const model::CodeModel& model,
                                           const deps::DependencyGraph& graph,
                                           const smells::Detection& detection) {
  std::vector<FrequencyCell> out;
  for (int cs1 = 0; cs1 < smells::kSmellKindCount; ++cs1) {
    for (int cs2 = 0; cs2 < smells::kSmellKindCount; ++cs2) {
      if (cs1 == cs2) continue;
      interact::Frequency f =
          interact::interaction_frequency(model, graph, detection, static_cast<smells::SmellKind>(cs1),
                                          static_cast<smells::SmellKind>(cs2));
      out.push_back({static_cast<smells::SmellKind>(cs1), static_cast<smells::SmellKind>(cs2),
                     f.interacting, f.total});
    }
  }
  return out;
}

std::string render_interactions_for(const model::CodeModel& model,
                                    const deps::DependencyGraph& graph,
                                    const smells::Detection& detection,
                                    const std::vector<interact::SmellPair>& pairs,
                                    const AnalysisConfig& config) {
  std::vector<interact::PairDataset> datasets;
  datasets.reserve(pairs.size());
  for (const interact::SmellPair& pair : pairs) {
    datasets.push_back(interact::build_pair_dataset(model, graph, detection, pair));
  }
  return render_interaction_facts(model, graph, detection, datasets,
                                  all_frequencies(model, graph, detection), config);
}

}  // namespace

void RunStatus::merge(const RunStatus& other) {
  for (const std::string& id : other.processed) {
    if (std::find(processed.begin(), processed.end(), id) == processed.end()) {
      processed.push_back(id);
    }
  }
  skipped.insert(skipped.end(), other.skipped.begin(), other.skipped.end());
}

RunStatus run_extract(const PipelineOptions& options) {
  model::CorpusManifest manifest = load_configured_manifest(options);
  OutputLayout layout{options.config.out_dir};
  RunStatus status;
  for (const model::ProjectSpec& project : select_projects(manifest, options.projects)) {
    try {
      ParsedProject parsed = parse_project(manifest, project);
      deps::DependencyGraph graph = deps::extract_dependencies(parsed.model, parsed.facts);
      write_text_file(layout.artifact_facts(project.id),
                      render_artifact_facts(parsed.model, options.config));
      write_text_file(layout.dependency_facts(project.id),
                      render_dependency_facts(graph, parsed.model, options.config));
      log_info(project.id + ": " + std::to_string(graph.edges.size()) + " dependency edges");
      status.processed.push_back(project.id);
    } catch (const std::exception& e) {
      log_error("extract: skipping project '" + project.id + "': " + e.what());
      status.skipped.emplace_back(project.id, e.what());
    }
  }
  return status;
}

RunStatus run_detect(const PipelineOptions& options) {
  model::CorpusManifest manifest = load_configured_manifest(options);
  OutputLayout layout{options.config.out_dir};
  RunStatus status;
  for (const model::ProjectSpec& project : select_projects(manifest, options.projects)) {
    try {
      ParsedProject parsed = parse_project(manifest, project);
      smells::Detection detection =
          smells::detect_all(parsed.model, parsed.facts, options.config.thresholds);
      write_text_file(layout.smell_facts(project.id),
                      render_smell_facts(detection, parsed.model, options.config));
      log_info(project.id + ": " + std::to_string(detection.instances.size()) +
               " smell instances");
      status.processed.push_back(project.id);
    } catch (const std::exception& e) {
      log_error("detect: skipping project '" + project.id + "': " + e.what());
      status.skipped.emplace_back(project.id, e.what());
    }
  }
  return status;
}

RunStatus run_interact(const PipelineOptions& options) {
  OutputLayout layout{options.config.out_dir};
  std::vector<interact::SmellPair> pairs = select_pairs(options.pairs);
  RunStatus status;
  for (const std::string& dir : select_fact_dirs(layout, "artifacts.ndjson", options.projects,
                                                 "run extract first")) {
    std::string id = dir;  // replaced by the real id once artifacts load
    try {
      model::CodeModel model = load_artifact_facts(layout.facts_dir() + "/" + dir +
                                                   "/artifacts.ndjson");
      id = model.project_id;
      deps::DependencyGraph graph =
          load_dependency_facts(layout.facts_dir() + "/" + dir + "/dependencies.ndjson", model);
      smells::Detection detection = load_smell_facts(
          layout.facts_dir() + "/" + dir + "/smells.ndjson", model, options.config);
      write_text_file(layout.interaction_facts(id),
                      render_interactions_for(model, graph, detection, pairs, options.config));
      status.processed.push_back(id);
    } catch (const std::exception& e) {
      log_error("interact: skipping project '" + id + "': " + e.what());
      status.skipped.emplace_back(id, e.what());
    }
  }
  return status;
}

RunStatus run_analyze(const PipelineOptions& options) {
  OutputLayout layout{options.config.out_dir};
  RunStatus status;
  std::vector<InteractionFacts> loaded;
  for (const std::string& dir : select_fact_dirs(layout, "interactions.ndjson", options.projects,
                                                 "run interact first")) {
    try {
      loaded.push_back(
          load_interaction_facts(layout.facts_dir() + "/" + dir + "/interactions.ndjson"));
      status.processed.push_back(loaded.back().project.id);
    } catch (const std::exception& e) {
      log_error("analyze: skipping project directory '" + dir + "': " + e.what());
      status.skipped.emplace_back(dir, e.what());
    }
  }
  if (loaded.empty()) throw std::runtime_error("no loadable interaction facts — run interact first");
  AnalysisResults results = analyze(loaded, options.config);
  write_text_file(layout.result_facts(), render_result_facts(results, options.config));
  log_info("analyze: " + std::to_string(results.union_tests_run) + " union tests, " +
           std::to_string(results.per_system_tests_run) + " per-system tests");
  return status;
}

RunStatus run_report(const PipelineOptions& options) {
  OutputLayout layout{options.config.out_dir};
  if (!std::filesystem::is_regular_file(layout.result_facts())) {
    throw std::runtime_error("no result facts at " + layout.result_facts() + " — run analyze first");
  }
  AnalysisResults results = load_result_facts(layout.result_facts());
  ReportBundle bundle = build_reports(results, options.config);
  for (const auto& [name, content] : bundle.files) {
    write_text_file(layout.report_file(name), content);
    log_info("report: wrote " + layout.report_file(name));
  }
  RunStatus status;
  for (const ProjectSummaryFacts& p : results.projects) status.processed.push_back(p.id);
  return status;
}

RunStatus run_sample(const PipelineOptions& options) {
  OutputLayout layout{options.config.out_dir};
  RunStatus status;

  struct Stratum {
    std::string id;
    // One row per smell instance, in detection order: kind label, artifact id.
    std::vector<std::pair<std::string, std::string>> instances;
  };
  std::vector<Stratum> strata;
  for (const std::string& dir : select_fact_dirs(layout, "smells.ndjson", options.projects,
                                                 "run detect first")) {
    std::string id = dir;
    try {
      model::CodeModel model = load_artifact_facts(layout.facts_dir() + "/" + dir +
                                                   "/artifacts.ndjson");
      id = model.project_id;
      smells::Detection detection = load_smell_facts(
          layout.facts_dir() + "/" + dir + "/smells.ndjson", model, options.config);
      Stratum stratum;
      stratum.id = id;
      for (const smells::SmellInstance& inst : detection.instances) {
        stratum.instances.emplace_back(smells::to_string(inst.kind), model.at(inst.artifact).id);
      }
      strata.push_back(std::move(stratum));
      status.processed.push_back(id);
    } catch (const std::exception& e) {
      log_error("sample: skipping project '" + id + "': " + e.what());
      status.skipped.emplace_back(id, e.what());
    }
  }

  std::map<std::string, int> counts;
  long long population = 0;
  for (const Stratum& s : strata) {
    counts[s.id] = static_cast<int>(s.instances.size());
    population += static_cast<long long>(s.instances.size());
  }
  if (population == 0) throw std::runtime_error("no smell instances to sample");

  const double margin = 0.10;
  int n = stats::sample_size(population, margin);
  std::map<std::string, std::vector<int>> picks =
      stats::stratified_sample(counts, n, options.config.seed);

  CsvWriter csv;
  csv.header({"project", "instance", "smell", "artifact"});
  json strata_json;
  for (const Stratum& s : strata) {
    const std::vector<int>& indices = picks[s.id];
    for (int index : indices) {
      const auto& [kind, artifact] = s.instances[static_cast<std::size_t>(index)];
      csv.row({s.id, CsvWriter::cell(index), kind, artifact});
    }
    strata_json[s.id] = json{{"population", counts[s.id]},
                             {"sampled", indices.size()}};
  }

  json meta;
  meta["config"] = options.config.to_json();
  meta["confidence"] = 0.95;
  meta["margin"] = margin;
  meta["population"] = population;
  meta["sample_size"] = n;
  meta["seed"] = options.config.seed;
  meta["strata"] = std::move(strata_json);

  write_text_file(layout.report_file("sample.csv"), csv.str());
  write_text_file(layout.report_file("sample.json"), meta.dump(2) + "\n");
  log_info("sample: " + std::to_string(n) + " of " + std::to_string(population) + " instances");
  return status;
}

RunStatus run_all(const PipelineOptions& options) {
  model::CorpusManifest manifest = load_configured_manifest(options);
  OutputLayout layout{options.config.out_dir};
  std::vector<interact::SmellPair> pairs = select_pairs(options.pairs);
  RunStatus status;
  for (const model::ProjectSpec& project : select_projects(manifest, options.projects)) {
    try {
      ParsedProject parsed = parse_project(manifest, project);
      deps::DependencyGraph graph = deps::extract_dependencies(parsed.model, parsed.facts);
      smells::Detection detection =
          smells::detect_all(parsed.model, parsed.facts, options.config.thresholds);
      write_text_file(layout.artifact_facts(project.id),
                      render_artifact_facts(parsed.model, options.config));
      write_text_file(layout.dependency_facts(project.id),
                      render_dependency_facts(graph, parsed.model, options.config));
      write_text_file(layout.smell_facts(project.id),
                      render_smell_facts(detection, parsed.model, options.config));
      write_text_file(layout.interaction_facts(project.id),
                      render_interactions_for(parsed.model, graph, detection, pairs,
                                              options.config));
      status.processed.push_back(project.id);
    } catch (const std::exception& e) {
      log_error("run-all: skipping project '" + project.id + "': " + e.what());
      status.skipped.emplace_back(project.id, e.what());
    }
  }
  if (status.processed.empty()) {
    throw std::runtime_error("run-all: no project produced facts");
  }
  // The analysis covers exactly the projects this run processed; stale fact
  // directories from earlier runs against other corpora stay out of it.
  PipelineOptions analysis_options = options;
  analysis_options.projects = status.processed;
  status.merge(run_analyze(analysis_options));
  status.merge(run_report(options));
  return status;
}

}  // namespace smelldep::report
