#include "smelldep/report/facts.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "smelldep/support/jsonl.hpp"

namespace smelldep::report {

namespace {

using model::Artifact;
using model::ArtifactKind;
using model::CodeModel;
using nlohmann::json;

constexpr const char* kArtifactFormat = "smelldep-artifacts";
constexpr const char* kDependencyFormat = "smelldep-dependencies";
constexpr const char* kSmellFormat = "smelldep-smells";
constexpr const char* kInteractionFormat = "smelldep-interactions";

[[noreturn]] void corrupt(const std::string& what) { throw std::runtime_error(what); }

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) corrupt(std::string("record lacks '") + key + "'");
  return *it;
}

int require_int(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number_integer()) corrupt(std::string("'") + key + "' is not an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number()) corrupt(std::string("'") + key + "' is not a number");
  return v.get<double>();
}

std::string require_string(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_string()) corrupt(std::string("'") + key + "' is not a string");
  return v.get<std::string>();
}

bool require_bool(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_boolean()) corrupt(std::string("'") + key + "' is not a boolean");
  return v.get<bool>();
}

ArtifactKind require_artifact_kind(const json& j, const char* key) {
  ArtifactKind kind;
  std::string s = require_string(j, key);
  if (!model::artifact_kind_from_string(s, kind)) corrupt("unknown artifact kind '" + s + "'");
  return kind;
}

// Kinds under their short triple spelling (FM, Accessor, ...).
ArtifactKind require_short_kind(const json& j, const char* key) {
  std::string s = require_string(j, key);
  for (ArtifactKind k :
       {ArtifactKind::Class, ArtifactKind::Interface, ArtifactKind::FunctionalMethod,
        ArtifactKind::Accessor, ArtifactKind::Constructor, ArtifactKind::Field}) {
    if (s == deps::short_kind(k)) return k;
  }
  corrupt("unknown artifact kind '" + s + "'");
}

deps::Relation require_relation(const json& j, const char* key) {
  deps::Relation r;
  std::string s = require_string(j, key);
  if (!deps::relation_from_string(s, r)) corrupt("unknown relation '" + s + "'");
  return r;
}

smells::SmellKind require_smell_kind(const json& j, const char* key) {
  smells::SmellKind k;
  std::string s = require_string(j, key);
  if (!smells::smell_kind_from_string(s, k)) corrupt("unknown smell kind '" + s + "'");
  return k;
}

void check_artifact_index(const CodeModel& model, int idx) {
  if (idx < 0 || idx >= static_cast<int>(model.artifacts.size())) {
    corrupt("artifact index " + std::to_string(idx) + " out of range");
  }
}

}  // namespace

std::string project_dir_name(const std::string& project_id) {
  std::string name = project_id;
  for (char& c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  if (name.empty() || name == "." || name == "..") name = "_" + name;
  return name;
}

std::vector<std::string> OutputLayout::project_dirs_with(const std::string& fact_file) const {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  fs::path root(facts_dir());
  if (!fs::is_directory(root)) return out;
  for (const fs::directory_entry& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / fact_file)) {
      out.push_back(entry.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// artifacts

std::string render_artifact_facts(const CodeModel& model, const AnalysisConfig& config) {
  std::vector<json> records;
  records.push_back(json{{"record", "project"},
                         {"id", model.project_id},
                         {"types", model.total_types},
                         {"methods", model.total_methods},
                         {"loc", model.total_loc}});
  for (const auto& [id, idx] : model.artifact_by_id) {
    const Artifact& a = model.at(idx);
    json r;
    r["record"] = "artifact";
    r["index"] = idx;
    r["id"] = id;
    r["kind"] = model::to_string(a.kind);
    r["name"] = a.name;
    r["declaring"] = a.declaring;
    r["file"] = a.file;
    r["line"] = a.line;
    r["end_line"] = a.end_line;
    r["public"] = a.is_public;
    r["private"] = a.is_private;
    r["static"] = a.is_static;
    r["final"] = a.is_final;
    r["backing_field"] = a.backing_field;
    r["getter"] = a.is_getter;
    records.push_back(std::move(r));
  }
  return JsonlFile::render(kArtifactFormat, config.to_json(), records);
}

CodeModel load_artifact_facts(const std::string& path) {
  JsonlFile::Parsed parsed = JsonlFile::parse_file(path, kArtifactFormat);
  CodeModel model;
  try {
    bool have_project = false;
    std::vector<std::pair<int, Artifact>> loaded;
    for (const json& r : parsed.records) {
      std::string record = require_string(r, "record");
      if (record == "project") {
        if (have_project) corrupt("duplicate project record");
        have_project = true;
        model.project_id = require_string(r, "id");
        model.total_types = require_int(r, "types");
        model.total_methods = require_int(r, "methods");
        model.total_loc = require_int(r, "loc");
      } else if (record == "artifact") {
        Artifact a;
        int index = require_int(r, "index");
        a.id = require_string(r, "id");
        a.kind = require_artifact_kind(r, "kind");
        a.name = require_string(r, "name");
        a.declaring = require_int(r, "declaring");
        a.file = require_string(r, "file");
        a.line = require_int(r, "line");
        a.end_line = require_int(r, "end_line");
        a.is_public = require_bool(r, "public");
        a.is_private = require_bool(r, "private");
        a.is_static = require_bool(r, "static");
        a.is_final = require_bool(r, "final");
        a.backing_field = require_int(r, "backing_field");
        a.is_getter = require_bool(r, "getter");
        loaded.emplace_back(index, std::move(a));
      } else {
        corrupt("unexpected record '" + record + "' in artifact facts");
      }
    }
    if (!have_project) corrupt("artifact facts lack the project record");

    model.artifacts.resize(loaded.size());
    std::vector<bool> seen(loaded.size(), false);
    for (auto& [index, artifact] : loaded) {
      if (index < 0 || index >= static_cast<int>(loaded.size()) ||
          seen[static_cast<std::size_t>(index)]) {
        corrupt("artifact indices must form a permutation of 0..n-1");
      }
      seen[static_cast<std::size_t>(index)] = true;
      model.artifacts[static_cast<std::size_t>(index)] = std::move(artifact);
    }

    model.members.resize(model.artifacts.size());
    model.type_entry_of.assign(model.artifacts.size(), -1);
    for (std::size_t i = 0; i < model.artifacts.size(); ++i) {
      const Artifact& a = model.artifacts[i];
      if (!model.artifact_by_id.emplace(a.id, static_cast<int>(i)).second) {
        corrupt("duplicate artifact id '" + a.id + "'");
      }
      if (a.declaring != -1) {
        check_artifact_index(model, a.declaring);
        if (!model.artifacts[static_cast<std::size_t>(a.declaring)].is_type()) {
          corrupt("artifact '" + a.id + "' is declared under a non-type");
        }
        // Members in index order reproduces the original member lists;
        // nested types stand alone.
        if (!a.is_type()) {
          model.members[static_cast<std::size_t>(a.declaring)].push_back(static_cast<int>(i));
        }
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return model;
}

// ---------------------------------------------------------------------------
// dependencies

std::string render_dependency_facts(const deps::DependencyGraph& graph, const CodeModel& model,
                                    const AnalysisConfig& config) {
  (void)model;
  std::vector<json> records;
  records.reserve(graph.edges.size());
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const deps::DependencyEdge& e = graph.edges[i];
    json r;
    r["record"] = "edge";
    r["index"] = static_cast<int>(i);
    r["relation"] = deps::to_string(e.type.relation);
    r["source_kind"] = deps::short_kind(e.type.source_kind);
    r["target_kind"] = deps::short_kind(e.type.target_kind);
    r["source"] = e.source;
    r["target"] = e.target;
    r["line"] = e.line;
    r["col"] = e.col;
    records.push_back(std::move(r));
  }
  return JsonlFile::render(kDependencyFormat, config.to_json(), records);
}

deps::DependencyGraph load_dependency_facts(const std::string& path, const CodeModel& model) {
  JsonlFile::Parsed parsed = JsonlFile::parse_file(path, kDependencyFormat);
  deps::DependencyGraph graph;
  try {
    graph.edges.reserve(parsed.records.size());
    for (const json& r : parsed.records) {
      std::string record = require_string(r, "record");
      if (record != "edge") corrupt("unexpected record '" + record + "' in dependency facts");
      if (require_int(r, "index") != static_cast<int>(graph.edges.size())) {
        corrupt("edge records must appear in index order");
      }
      deps::DependencyEdge e;
      e.type.relation = require_relation(r, "relation");
      e.type.source_kind = require_short_kind(r, "source_kind");
      e.type.target_kind = require_short_kind(r, "target_kind");
      e.source = require_int(r, "source");
      e.target = require_int(r, "target");
      e.line = require_int(r, "line");
      e.col = require_int(r, "col");
      if (!deps::validate_triple(e.type)) corrupt("edge " + e.type.label() + " is not a valid triple");
      check_artifact_index(model, e.source);
      check_artifact_index(model, e.target);
      if (e.source == e.target) corrupt("self-edge in dependency facts");
      if (model.at(e.source).kind != e.type.source_kind ||
          model.at(e.target).kind != e.type.target_kind) {
        corrupt("edge triple disagrees with the endpoint artifact kinds");
      }
      graph.edges.push_back(e);
    }

    // The same index construction the extractor performs.
    std::size_t n = model.artifacts.size();
    graph.by_source.assign(n, {});
    graph.by_target.assign(n, {});
    graph.by_class.assign(n, {});
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
      int idx = static_cast<int>(i);
      const deps::DependencyEdge& edge = graph.edges[i];
      graph.by_source[static_cast<std::size_t>(edge.source)].push_back(idx);
      graph.by_target[static_cast<std::size_t>(edge.target)].push_back(idx);
      int sc = model.class_of(edge.source);
      int tc = model.class_of(edge.target);
      if (sc >= 0) graph.by_class[static_cast<std::size_t>(sc)].push_back(idx);
      if (tc >= 0 && tc != sc) graph.by_class[static_cast<std::size_t>(tc)].push_back(idx);
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return graph;
}

// ---------------------------------------------------------------------------
// smells

std::string render_smell_facts(const smells::Detection& detection, const CodeModel& model,
                               const AnalysisConfig& config) {
  std::vector<json> records;
  for (std::size_t i = 0; i < model.artifacts.size(); ++i) {
    const Artifact& a = model.artifacts[i];
    if (!a.is_callable()) continue;
    const metrics::MethodMetrics& m = detection.table.method[i];
    json r;
    r["record"] = "method-metrics";
    r["artifact"] = static_cast<int>(i);
    r["id"] = a.id;
    r["loc"] = m.loc;
    r["cyclo"] = m.cyclo;
    r["maxnesting"] = m.maxnesting;
    r["noav"] = m.noav;
    r["atfd"] = m.atfd_m;
    r["fdp"] = m.fdp;
    r["laa"] = m.laa;
    records.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < model.artifacts.size(); ++i) {
    const Artifact& a = model.artifacts[i];
    if (a.kind != ArtifactKind::Class) continue;
    const metrics::ClassMetrics& m = detection.table.cls[i];
    json r;
    r["record"] = "class-metrics";
    r["artifact"] = static_cast<int>(i);
    r["id"] = a.id;
    r["wmc"] = m.wmc;
    r["atfd"] = m.atfd_c;
    r["loc"] = m.loc_c;
    r["noap"] = m.noap;
    r["noam"] = m.noam;
    r["nom"] = m.nom;
    r["bm_count"] = m.bm_count;
    r["tcc"] = m.tcc;
    r["woc"] = m.woc;
    records.push_back(std::move(r));
  }
  for (const smells::SmellInstance& inst : detection.instances) {
    json r;
    r["record"] = "instance";
    r["kind"] = smells::to_string(inst.kind);
    r["artifact"] = inst.artifact;
    r["id"] = model.at(inst.artifact).id;
    r["evidence"] = inst.evidence;
    records.push_back(std::move(r));
  }
  return JsonlFile::render(kSmellFormat, config.to_json(), records);
}

smells::Detection load_smell_facts(const std::string& path, const CodeModel& model,
                                   const AnalysisConfig& config) {
  JsonlFile::Parsed parsed = JsonlFile::parse_file(path, kSmellFormat);
  smells::Detection det;
  det.thresholds = config.thresholds;
  std::size_t n = model.artifacts.size();
  det.table.method.resize(n);
  det.table.cls.resize(n);
  for (auto& flags : det.flags) flags.assign(n, false);
  try {
    for (const json& r : parsed.records) {
      std::string record = require_string(r, "record");
      if (record == "method-metrics") {
        int idx = require_int(r, "artifact");
        check_artifact_index(model, idx);
        metrics::MethodMetrics& m = det.table.method[static_cast<std::size_t>(idx)];
        m.loc = require_int(r, "loc");
        m.cyclo = require_int(r, "cyclo");
        m.maxnesting = require_int(r, "maxnesting");
        m.noav = require_int(r, "noav");
        m.atfd_m = require_int(r, "atfd");
        m.fdp = require_int(r, "fdp");
        m.laa = require_number(r, "laa");
      } else if (record == "class-metrics") {
        int idx = require_int(r, "artifact");
        check_artifact_index(model, idx);
        metrics::ClassMetrics& m = det.table.cls[static_cast<std::size_t>(idx)];
        m.wmc = require_int(r, "wmc");
        m.atfd_c = require_int(r, "atfd");
        m.loc_c = require_int(r, "loc");
        m.noap = require_int(r, "noap");
        m.noam = require_int(r, "noam");
        m.nom = require_int(r, "nom");
        m.bm_count = require_int(r, "bm_count");
        m.tcc = require_number(r, "tcc");
        m.woc = require_number(r, "woc");
      } else if (record == "instance") {
        smells::SmellInstance inst;
        inst.kind = require_smell_kind(r, "kind");
        inst.artifact = require_int(r, "artifact");
        check_artifact_index(model, inst.artifact);
        if (model.at(inst.artifact).kind != smells::artifact_kind_of(inst.kind)) {
          corrupt("smell instance artifact has the wrong kind");
        }
        const json& evidence = require_key(r, "evidence");
        if (!evidence.is_object()) corrupt("'evidence' is not an object");
        for (const auto& [name, value] : evidence.items()) {
          if (!value.is_number()) corrupt("evidence '" + name + "' is not a number");
          inst.evidence[name] = value.get<double>();
        }
        auto& flags = det.flags[static_cast<int>(inst.kind)];
        if (flags[static_cast<std::size_t>(inst.artifact)]) {
          corrupt("duplicate smell instance for artifact " + std::to_string(inst.artifact));
        }
        flags[static_cast<std::size_t>(inst.artifact)] = true;
        det.instances.push_back(std::move(inst));
      } else {
        corrupt("unexpected record '" + record + "' in smell facts");
      }
    }
    for (int k = 0; k < smells::kSmellKindCount; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (det.flags[k][i]) det.smelly[k].push_back(static_cast<int>(i));
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return det;
}

// ---------------------------------------------------------------------------
// interactions

std::string render_interaction_facts(const CodeModel& model, const deps::DependencyGraph& graph,
                                     const smells::Detection& detection,
                                     const std::vector<interact::PairDataset>& datasets,
                                     const std::vector<FrequencyCell>& frequencies,
                                     const AnalysisConfig& config) {
  std::vector<json> records;

  json smell_counts;
  for (int k = 0; k < smells::kSmellKindCount; ++k) {
    smell_counts[smells::to_string(static_cast<smells::SmellKind>(k))] =
        static_cast<int>(detection.smelly[k].size());
  }
  records.push_back(json{{"record", "project"},
                         {"id", model.project_id},
                         {"types", model.total_types},
                         {"methods", model.total_methods},
                         {"loc", model.total_loc},
                         {"artifacts", static_cast<int>(model.artifacts.size())},
                         {"edges", static_cast<int>(graph.edges.size())},
                         {"smells", smell_counts}});

  for (const FrequencyCell& cell : frequencies) {
    records.push_back(json{{"record", "frequency"},
                           {"cs1", smells::to_string(cell.cs1)},
                           {"cs2", smells::to_string(cell.cs2)},
                           {"interacting", cell.interacting},
                           {"total", cell.total}});
  }

  for (const interact::PairDataset& ds : datasets) {
    for (const interact::InteractionRecord& rec : ds.records) {
      json edges = json::array();
      for (const auto& [edge_idx, dir] : rec.edges) {
        const deps::DependencyType& t = graph.edges[static_cast<std::size_t>(edge_idx)].type;
        edges.push_back(json{{"edge", edge_idx},
                             {"relation", deps::to_string(t.relation)},
                             {"source_kind", deps::short_kind(t.source_kind)},
                             {"target_kind", deps::short_kind(t.target_kind)},
                             {"direction", interact::to_string(dir)}});
      }
      records.push_back(json{{"record", "interaction"},
                             {"pair", ds.pair.label()},
                             {"type", interact::to_string(rec.type)},
                             {"location", interact::to_string(rec.location)},
                             {"a1", rec.a1},
                             {"a2", rec.a2},
                             {"a1_id", model.at(rec.a1).id},
                             {"a2_id", model.at(rec.a2).id},
                             {"edges", std::move(edges)}});
    }
  }
  return JsonlFile::render(kInteractionFormat, config.to_json(), records);
}

InteractionFacts load_interaction_facts(const std::string& path) {
  JsonlFile::Parsed parsed = JsonlFile::parse_file(path, kInteractionFormat);
  InteractionFacts facts;
  try {
    bool have_project = false;
    std::map<std::string, std::size_t> dataset_by_label;
    for (const interact::SmellPair& pair : interact::all_smell_pairs()) {
      stats::DatasetView view;
      view.pair = pair;
      dataset_by_label[pair.label()] = facts.datasets.size();
      facts.datasets.push_back(std::move(view));
    }

    for (const json& r : parsed.records) {
      std::string record = require_string(r, "record");
      if (record == "project") {
        if (have_project) corrupt("duplicate project record");
        have_project = true;
        facts.project.id = require_string(r, "id");
        facts.project.types = require_int(r, "types");
        facts.project.methods = require_int(r, "methods");
        facts.project.loc = require_int(r, "loc");
        facts.project.artifacts = require_int(r, "artifacts");
        facts.project.edges = require_int(r, "edges");
        const json& counts = require_key(r, "smells");
        if (!counts.is_object()) corrupt("'smells' is not an object");
        for (const auto& [name, value] : counts.items()) {
          smells::SmellKind kind;
          if (!smells::smell_kind_from_string(name, kind)) corrupt("unknown smell kind '" + name + "'");
          if (!value.is_number_integer()) corrupt("smell count is not an integer");
          facts.project.smell_counts[static_cast<int>(kind)] = value.get<int>();
        }
      } else if (record == "frequency") {
        FrequencyCell cell;
        cell.cs1 = require_smell_kind(r, "cs1");
        cell.cs2 = require_smell_kind(r, "cs2");
        cell.interacting = require_int(r, "interacting");
        cell.total = require_int(r, "total");
        if (cell.cs1 == cell.cs2) corrupt("frequency cell for a single smell kind");
        if (cell.interacting < 0 || cell.interacting > cell.total) {
          corrupt("frequency cell counts are inconsistent");
        }
        facts.frequencies.push_back(cell);
      } else if (record == "interaction") {
        std::string label = require_string(r, "pair");
        auto it = dataset_by_label.find(label);
        if (it == dataset_by_label.end()) corrupt("unknown smell pair '" + label + "'");
        stats::RecordView view;
        std::string type = require_string(r, "type");
        if (!interact::interaction_type_from_string(type, view.type)) {
          corrupt("unknown interaction type '" + type + "'");
        }
        std::string location = require_string(r, "location");
        if (!interact::relative_location_from_string(location, view.location)) {
          corrupt("unknown relative location '" + location + "'");
        }
        const json& edges = require_key(r, "edges");
        if (!edges.is_array() || edges.empty()) corrupt("'edges' must be a nonempty array");
        for (const json& e : edges) {
          deps::DependencyType t;
          t.relation = require_relation(e, "relation");
          t.source_kind = require_short_kind(e, "source_kind");
          t.target_kind = require_short_kind(e, "target_kind");
          if (!deps::validate_triple(t)) corrupt("edge " + t.label() + " is not a valid triple");
          interact::FlowDirection dir;
          std::string d = require_string(e, "direction");
          if (!interact::flow_direction_from_string(d, dir)) {
            corrupt("unknown flow direction '" + d + "'");
          }
          view.edges.emplace_back(t, dir);
        }
        facts.datasets[it->second].records.push_back(std::move(view));
      } else {
        corrupt("unexpected record '" + record + "' in interaction facts");
      }
    }
    if (!have_project) corrupt("interaction facts lack the project record");
    for (stats::DatasetView& view : facts.datasets) view.project_id = facts.project.id;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return facts;
}

}  // namespace smelldep::report
