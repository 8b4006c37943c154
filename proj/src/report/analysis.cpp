#include "smelldep/report/analysis.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "smelldep/support/jsonl.hpp"

namespace smelldep::report {

namespace {

using deps::DependencyType;
using deps::Relation;
using interact::FlowDirection;
using interact::InteractionType;
using interact::RelativeLocation;
using model::ArtifactKind;
using nlohmann::json;

constexpr const char* kResultFormat = "smelldep-results";

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

smells::SmellKind require_smell_kind(const json& j, const char* key) {
  smells::SmellKind k;
  std::string s = require_string(j, key);
  if (!smells::smell_kind_from_string(s, k)) corrupt("unknown smell kind '" + s + "'");
  return k;
}

interact::SmellPair require_pair(const json& j, const char* key) {
  std::string label = require_string(j, key);
  for (const interact::SmellPair& pair : interact::all_smell_pairs()) {
    if (pair.label() == label) return pair;
  }
  corrupt("unknown smell pair '" + label + "'");
}

InteractionType require_interaction_type(const json& j, const char* key) {
  InteractionType t;
  std::string s = require_string(j, key);
  if (!interact::interaction_type_from_string(s, t)) corrupt("unknown interaction type '" + s + "'");
  return t;
}

RelativeLocation require_location(const json& j, const char* key) {
  RelativeLocation l;
  std::string s = require_string(j, key);
  if (!interact::relative_location_from_string(s, l)) corrupt("unknown relative location '" + s + "'");
  return l;
}

FlowDirection require_direction(const json& j, const char* key) {
  FlowDirection d;
  std::string s = require_string(j, key);
  if (!interact::flow_direction_from_string(s, d)) corrupt("unknown flow direction '" + s + "'");
  return d;
}

DependencyType require_triple(const json& j) {
  DependencyType t;
  if (!deps::relation_from_string(require_string(j, "relation"), t.relation)) {
    corrupt("unknown relation '" + require_string(j, "relation") + "'");
  }
  auto kind = [&](const char* key) {
    std::string s = require_string(j, key);
    for (ArtifactKind k : {ArtifactKind::Class, ArtifactKind::Interface,
                           ArtifactKind::FunctionalMethod, ArtifactKind::Accessor,
                           ArtifactKind::Constructor, ArtifactKind::Field}) {
      if (s == deps::short_kind(k)) return k;
    }
    corrupt("unknown artifact kind '" + s + "'");
  };
  t.source_kind = kind("source_kind");
  t.target_kind = kind("target_kind");
  if (!deps::validate_triple(t)) corrupt("triple " + t.label() + " is not valid");
  return t;
}

stats::ContrastStatus require_status(const json& j, const char* key) {
  std::string s = require_string(j, key);
  for (stats::ContrastStatus status : {stats::ContrastStatus::Tested, stats::ContrastStatus::Impossible,
                                       stats::ContrastStatus::Absent}) {
    if (s == stats::to_string(status)) return status;
  }
  corrupt("unknown contrast status '" + s + "'");
}

stats::EffectBand require_band(const json& j, const char* key) {
  std::string s = require_string(j, key);
  for (stats::EffectBand band : {stats::EffectBand::Negligible, stats::EffectBand::Small,
                                 stats::EffectBand::Medium, stats::EffectBand::Large}) {
    if (s == stats::to_string(band)) return band;
  }
  corrupt("unknown effect band '" + s + "'");
}

// --- rendering helpers ------------------------------------------------------

void put_spec(json& r, const stats::ContrastSpec& spec) {
  r["pair"] = spec.pair.label();
  r["baseline"] = interact::to_string(spec.baseline);
  r["location"] = interact::to_string(spec.location);
  if (spec.variable.general) {
    r["variable"] = "general";
  } else {
    r["variable"] = "specific";
    r["relation"] = deps::to_string(spec.variable.dep_type.relation);
    r["source_kind"] = deps::short_kind(spec.variable.dep_type.source_kind);
    r["target_kind"] = deps::short_kind(spec.variable.dep_type.target_kind);
    r["direction"] = interact::to_string(spec.variable.direction);
  }
}

stats::ContrastSpec read_spec(const json& r) {
  stats::ContrastSpec spec;
  spec.pair = require_pair(r, "pair");
  spec.baseline = require_interaction_type(r, "baseline");
  spec.location = require_location(r, "location");
  std::string variable = require_string(r, "variable");
  if (variable == "general") {
    spec.variable.general = true;
  } else if (variable == "specific") {
    spec.variable.general = false;
    spec.variable.dep_type = require_triple(r);
    spec.variable.direction = require_direction(r, "direction");
  } else {
    corrupt("unknown variable kind '" + variable + "'");
  }
  return spec;
}

void put_outcome(json& r, const stats::ContrastOutcome& outcome, bool significant) {
  r["status"] = stats::to_string(outcome.status);
  if (outcome.status != stats::ContrastStatus::Tested) return;
  const stats::TestResult& t = outcome.result;
  r["u"] = t.u;
  r["p"] = t.p;
  r["delta"] = t.delta;
  r["band"] = stats::to_string(t.band);
  r["median1"] = t.median1;
  r["median2"] = t.median2;
  r["n1"] = t.n1;
  r["n2"] = t.n2;
  r["significant"] = significant;
}

// Reads the outcome and the row-level significance flag (evaluated at the
// run's α when rendered). The stats-layer field keeps its own p < 0.05
// definition so the loaded struct stays internally consistent.
stats::ContrastOutcome read_outcome(const json& r, bool& significant) {
  stats::ContrastOutcome outcome;
  outcome.status = require_status(r, "status");
  significant = false;
  if (outcome.status != stats::ContrastStatus::Tested) return outcome;
  stats::TestResult& t = outcome.result;
  t.u = require_number(r, "u");
  t.p = require_number(r, "p");
  t.delta = require_number(r, "delta");
  t.band = require_band(r, "band");
  t.median1 = require_number(r, "median1");
  t.median2 = require_number(r, "median2");
  t.n1 = require_int(r, "n1");
  t.n2 = require_int(r, "n2");
  t.significant = t.p < 0.05;
  significant = require_bool(r, "significant");
  return outcome;
}

}  // namespace

// ---------------------------------------------------------------------------
// dependency-type families

const std::vector<DependencyType>& data_access_family() {
  static const std::vector<DependencyType> family = {
      {Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::Accessor},
      {Relation::Use, ArtifactKind::FunctionalMethod, ArtifactKind::Field},
  };
  return family;
}

const std::vector<DependencyType>& fm_call_family() {
  static const std::vector<DependencyType> family = {
      {Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::FunctionalMethod},
  };
  return family;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {kDataAccessFamily, kFmCallFamily};
  return names;
}

const std::vector<DependencyType>& family_members(const std::string& family) {
  if (family == kDataAccessFamily) return data_access_family();
  if (family == kFmCallFamily) return fm_call_family();
  throw std::invalid_argument("unknown dependency family '" + family + "'");
}

// ---------------------------------------------------------------------------
// the analysis

AnalysisResults analyze(const std::vector<InteractionFacts>& projects,
                        const AnalysisConfig& config) {
  if (projects.empty()) throw std::invalid_argument("analysis needs at least one project");
  AnalysisResults out;

  // Corpus roster and union frequencies. Artifact sets of distinct projects
  // are disjoint, so corpus cells are plain sums.
  std::map<std::pair<int, int>, std::pair<int, int>> cell_sums;
  for (const InteractionFacts& facts : projects) {
    out.projects.push_back(facts.project);
    for (const FrequencyCell& cell : facts.frequencies) {
      auto& slot = cell_sums[{static_cast<int>(cell.cs1), static_cast<int>(cell.cs2)}];
      slot.first += cell.interacting;
      slot.second += cell.total;
    }
  }
  for (int cs1 = 0; cs1 < smells::kSmellKindCount; ++cs1) {
    for (int cs2 = 0; cs2 < smells::kSmellKindCount; ++cs2) {
      if (cs1 == cs2) continue;
      FrequencyCell cell;
      cell.cs1 = static_cast<smells::SmellKind>(cs1);
      cell.cs2 = static_cast<smells::SmellKind>(cs2);
      auto it = cell_sums.find({cs1, cs2});
      if (it != cell_sums.end()) {
        cell.interacting = it->second.first;
        cell.total = it->second.second;
      }
      out.frequencies.push_back(cell);
    }
  }

  // Both study perspectives over the concatenated per-project views.
  stats::StudyInput input;
  for (const InteractionFacts& facts : projects) {
    for (const stats::DatasetView& view : facts.datasets) input.datasets.push_back(view);
  }
  stats::StudyResults union_study = stats::run_study(input, stats::Perspective::Union);
  stats::StudyResults per_system = stats::run_study(input, stats::Perspective::PerSystem);
  out.union_tests_run = union_study.tests_run;
  out.per_system_tests_run = per_system.tests_run;

  auto alpha_significant = [&](const stats::ContrastOutcome& outcome) {
    return outcome.status == stats::ContrastStatus::Tested && outcome.result.p < config.alpha;
  };

  for (const stats::ContrastResult& row : union_study.contrasts) {
    out.union_contrasts.push_back({stats::Perspective::Union, std::string(), row.spec, row.outcome,
                                   alpha_significant(row.outcome)});
  }
  for (const stats::ProjectContrastResult& row : per_system.project_contrasts) {
    out.project_contrasts.push_back({stats::Perspective::PerSystem, row.project_id,
                                     row.result.spec, row.result.outcome,
                                     alpha_significant(row.result.outcome)});
  }

  // Per-system summaries, with the significance rate re-evaluated at α.
  // project_contrasts is spec-major, so summary i owns block i of rows.
  if (!per_system.summaries.empty()) {
    std::size_t block = per_system.project_contrasts.size() / per_system.summaries.size();
    for (std::size_t i = 0; i < per_system.summaries.size(); ++i) {
      stats::PerSystemSummary summary = per_system.summaries[i];
      int significant = 0;
      for (std::size_t j = i * block; j < (i + 1) * block; ++j) {
        if (alpha_significant(per_system.project_contrasts[j].result.outcome)) ++significant;
      }
      summary.significance_rate =
          summary.included_projects > 0
              ? static_cast<double>(significant) / summary.included_projects
              : 0.0;
      out.summaries.push_back(summary);
    }
  }

  // Rejection counts per dependency type over the union perspective, at α.
  std::map<DependencyType, RejectionRow> rejection_acc;
  for (const ContrastRow& row : out.union_contrasts) {
    if (row.spec.variable.general || row.outcome.status != stats::ContrastStatus::Tested) continue;
    RejectionRow& slot = rejection_acc[row.spec.variable.dep_type];
    ++slot.conducted;
    if (row.significant) {
      ++slot.rejecting;
      if (row.outcome.result.band != stats::EffectBand::Negligible) {
        ++slot.rejecting_excluding_negligible;
      }
    }
  }
  for (const DependencyType& t : deps::all_valid_triples()) {
    RejectionRow row;
    row.dep_type = t;
    auto it = rejection_acc.find(t);
    if (it != rejection_acc.end()) {
      row.conducted = it->second.conducted;
      row.rejecting = it->second.rejecting;
      row.rejecting_excluding_negligible = it->second.rejecting_excluding_negligible;
    }
    out.rejections.push_back(row);
  }

  // Family contrasts over the pooled union records.
  std::vector<stats::DatasetView> pooled;
  for (const interact::SmellPair& pair : interact::all_smell_pairs()) {
    stats::DatasetView view;
    view.project_id = "union";
    view.pair = pair;
    for (const stats::DatasetView& d : input.datasets) {
      if (d.pair == pair) {
        view.records.insert(view.records.end(), d.records.begin(), d.records.end());
      }
    }
    pooled.push_back(std::move(view));
  }
  for (const stats::DatasetView& view : pooled) {
    for (InteractionType baseline : {InteractionType::CS1_nonCS2, InteractionType::nonCS1_CS2}) {
      for (RelativeLocation location : {RelativeLocation::Same, RelativeLocation::Different}) {
        for (const std::string& family : family_names()) {
          for (FlowDirection direction : {FlowDirection::Forward, FlowDirection::Backward}) {
            stats::FamilyContrastSpec spec;
            spec.pair = view.pair;
            spec.baseline = baseline;
            spec.location = location;
            spec.triples = family_members(family);
            spec.direction = direction;
            stats::ContrastOutcome outcome = stats::run_family_contrast(view, spec);
            out.families.push_back({family, spec, outcome, alpha_significant(outcome)});
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// persistence

std::string render_result_facts(const AnalysisResults& results, const AnalysisConfig& config) {
  std::vector<json> records;

  for (const ProjectSummaryFacts& p : results.projects) {
    json smell_counts;
    for (int k = 0; k < smells::kSmellKindCount; ++k) {
      smell_counts[smells::to_string(static_cast<smells::SmellKind>(k))] = p.smell_counts[k];
    }
    records.push_back(json{{"record", "project"},
                           {"id", p.id},
                           {"types", p.types},
                           {"methods", p.methods},
                           {"loc", p.loc},
                           {"artifacts", p.artifacts},
                           {"edges", p.edges},
                           {"smells", std::move(smell_counts)}});
  }

  for (const FrequencyCell& cell : results.frequencies) {
    records.push_back(json{{"record", "frequency"},
                           {"cs1", smells::to_string(cell.cs1)},
                           {"cs2", smells::to_string(cell.cs2)},
                           {"interacting", cell.interacting},
                           {"total", cell.total}});
  }

  auto contrast_record = [](const ContrastRow& row) {
    json r;
    r["record"] = "contrast";
    r["perspective"] = stats::to_string(row.perspective);
    if (row.perspective == stats::Perspective::PerSystem) r["project"] = row.project;
    put_spec(r, row.spec);
    put_outcome(r, row.outcome, row.significant);
    return r;
  };
  for (const ContrastRow& row : results.union_contrasts) records.push_back(contrast_record(row));
  for (const ContrastRow& row : results.project_contrasts) records.push_back(contrast_record(row));

  for (const stats::PerSystemSummary& s : results.summaries) {
    json r;
    r["record"] = "summary";
    put_spec(r, s.spec);
    r["included"] = s.included_projects;
    r["significance_rate"] = s.significance_rate;
    r["consistency"] = s.consistency_score;
    records.push_back(std::move(r));
  }

  for (const FamilyRow& row : results.families) {
    json r;
    r["record"] = "family";
    r["family"] = row.family;
    r["pair"] = row.spec.pair.label();
    r["baseline"] = interact::to_string(row.spec.baseline);
    r["location"] = interact::to_string(row.spec.location);
    r["direction"] = interact::to_string(row.spec.direction);
    put_outcome(r, row.outcome, row.significant);
    records.push_back(std::move(r));
  }

  for (const RejectionRow& row : results.rejections) {
    records.push_back(json{{"record", "rejection"},
                           {"relation", deps::to_string(row.dep_type.relation)},
                           {"source_kind", deps::short_kind(row.dep_type.source_kind)},
                           {"target_kind", deps::short_kind(row.dep_type.target_kind)},
                           {"conducted", row.conducted},
                           {"rejecting", row.rejecting},
                           {"rejecting_excluding_negligible", row.rejecting_excluding_negligible}});
  }

  records.push_back(json{{"record", "tests"},
                         {"union", results.union_tests_run},
                         {"per_system", results.per_system_tests_run}});

  return JsonlFile::render(kResultFormat, config.to_json(), records);
}

AnalysisResults load_result_facts(const std::string& path) {
  JsonlFile::Parsed parsed = JsonlFile::parse_file(path, kResultFormat);
  AnalysisResults out;
  try {
    for (const json& r : parsed.records) {
      std::string record = require_string(r, "record");
      if (record == "project") {
        ProjectSummaryFacts p;
        p.id = require_string(r, "id");
        p.types = require_int(r, "types");
        p.methods = require_int(r, "methods");
        p.loc = require_int(r, "loc");
        p.artifacts = require_int(r, "artifacts");
        p.edges = require_int(r, "edges");
        const json& counts = require_key(r, "smells");
        if (!counts.is_object()) corrupt("'smells' is not an object");
        for (const auto& [name, value] : counts.items()) {
          smells::SmellKind kind;
          if (!smells::smell_kind_from_string(name, kind)) corrupt("unknown smell kind '" + name + "'");
          if (!value.is_number_integer()) corrupt("smell count is not an integer");
          p.smell_counts[static_cast<int>(kind)] = value.get<int>();
        }
        out.projects.push_back(std::move(p));
      } else if (record == "frequency") {
        FrequencyCell cell;
        cell.cs1 = require_smell_kind(r, "cs1");
        cell.cs2 = require_smell_kind(r, "cs2");
        cell.interacting = require_int(r, "interacting");
        cell.total = require_int(r, "total");
        if (cell.cs1 == cell.cs2) corrupt("frequency cell for a single smell kind");
        out.frequencies.push_back(cell);
      } else if (record == "contrast") {
        ContrastRow row;
        std::string perspective = require_string(r, "perspective");
        if (perspective == stats::to_string(stats::Perspective::Union)) {
          row.perspective = stats::Perspective::Union;
        } else if (perspective == stats::to_string(stats::Perspective::PerSystem)) {
          row.perspective = stats::Perspective::PerSystem;
          row.project = require_string(r, "project");
        } else {
          corrupt("unknown perspective '" + perspective + "'");
        }
        row.spec = read_spec(r);
        row.outcome = read_outcome(r, row.significant);
        if (row.perspective == stats::Perspective::Union) {
          out.union_contrasts.push_back(std::move(row));
        } else {
          out.project_contrasts.push_back(std::move(row));
        }
      } else if (record == "summary") {
        stats::PerSystemSummary s;
        s.spec = read_spec(r);
        s.included_projects = require_int(r, "included");
        s.significance_rate = require_number(r, "significance_rate");
        s.consistency_score = require_number(r, "consistency");
        out.summaries.push_back(std::move(s));
      } else if (record == "family") {
        FamilyRow row;
        row.family = require_string(r, "family");
        row.spec.pair = require_pair(r, "pair");
        row.spec.baseline = require_interaction_type(r, "baseline");
        row.spec.location = require_location(r, "location");
        row.spec.direction = require_direction(r, "direction");
        row.spec.triples = family_members(row.family);
        row.outcome = read_outcome(r, row.significant);
        out.families.push_back(std::move(row));
      } else if (record == "rejection") {
        RejectionRow row;
        row.dep_type = require_triple(r);
        row.conducted = require_int(r, "conducted");
        row.rejecting = require_int(r, "rejecting");
        row.rejecting_excluding_negligible = require_int(r, "rejecting_excluding_negligible");
        out.rejections.push_back(row);
      } else if (record == "tests") {
        out.union_tests_run = require_int(r, "union");
        out.per_system_tests_run = require_int(r, "per_system");
      } else {
        corrupt("unexpected record '" + record + "' in result facts");
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return out;
}

}  // namespace smelldep::report
