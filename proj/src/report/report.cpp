#include "smelldep/report/report.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "smelldep/support/table.hpp"

namespace smelldep::report {

namespace {

using interact::FlowDirection;
using interact::InteractionType;
using interact::RelativeLocation;
using nlohmann::json;
using smells::SmellKind;

std::string spec_key(const stats::ContrastSpec& spec) {
  return spec.pair.label() + "|" + interact::to_string(spec.baseline) + "|" +
         interact::to_string(spec.location) + "|" + spec.variable.label();
}

std::string family_key(const std::string& family, const interact::SmellPair& pair,
                       InteractionType baseline, RelativeLocation location,
                       FlowDirection direction) {
  return family + "|" + pair.label() + "|" + interact::to_string(baseline) + "|" +
         interact::to_string(location) + "|" + interact::to_string(direction);
}

// The smell a contrast characterizes is the replaced side, and its role
// follows from which end of the edges that side holds: the edge source is
// the consumer, the edge target the provider.
SmellKind characterized_smell(const interact::SmellPair& pair, InteractionType baseline) {
  return baseline == InteractionType::nonCS1_CS2 ? pair.cs1 : pair.cs2;
}

DependencyRole characterized_role(InteractionType baseline, FlowDirection direction) {
  bool first_side = baseline == InteractionType::nonCS1_CS2;
  bool source_side = (direction == FlowDirection::Forward) == first_side;
  return source_side ? DependencyRole::Consumer : DependencyRole::Provider;
}

// One heatmap cell: the grid varies the row smell, so the baseline replaces
// the row side and the contrast direction realizes the grid's edge sense.
struct CellSpec {
  interact::SmellPair pair;
  InteractionType baseline = InteractionType::CS1_nonCS2;
  FlowDirection direction = FlowDirection::Forward;
};

CellSpec cell_spec(SmellKind row, SmellKind col, bool row_to_col) {
  CellSpec cell;
  bool row_first = static_cast<int>(row) < static_cast<int>(col);
  cell.pair = row_first ? interact::SmellPair{row, col} : interact::SmellPair{col, row};
  cell.baseline = row_first ? InteractionType::nonCS1_CS2 : InteractionType::CS1_nonCS2;
  // Forward edges run from the pair's first side; the grid wants them to run
  // from the row side (row-to-col) or toward it (col-to-row).
  cell.direction = (row_first == row_to_col) ? FlowDirection::Forward : FlowDirection::Backward;
  return cell;
}

// The shared trailing columns of every contrast-bearing CSV.
const std::vector<std::string> kOutcomeColumns = {
    "status", "u", "p", "delta", "band", "significant",
    "median1", "median2", "n1", "n2"};

void append_masked(std::vector<std::string>& cells) {
  cells.push_back("masked");
  cells.insert(cells.end(), kOutcomeColumns.size() - 1, "");
}

void append_outcome(std::vector<std::string>& cells, const stats::ContrastOutcome& outcome,
                    bool significant) {
  switch (outcome.status) {
    case stats::ContrastStatus::Impossible:
      append_masked(cells);
      return;
    case stats::ContrastStatus::Absent:
      cells.push_back("absent");
      cells.insert(cells.end(), kOutcomeColumns.size() - 1, "");
      return;
    case stats::ContrastStatus::Tested:
      break;
  }
  const stats::TestResult& t = outcome.result;
  cells.push_back("tested");
  cells.push_back(format_double(t.u));
  cells.push_back(format_double(t.p));
  cells.push_back(format_double(t.delta));
  cells.push_back(stats::to_string(t.band));
  cells.push_back(significant ? "true" : "false");
  cells.push_back(format_double(t.median1));
  cells.push_back(format_double(t.median2));
  cells.push_back(CsvWriter::cell(t.n1));
  cells.push_back(CsvWriter::cell(t.n2));
}

void append_spec(std::vector<std::string>& cells, const stats::ContrastSpec& spec) {
  cells.push_back(spec.pair.label());
  cells.push_back(interact::to_string(spec.baseline));
  cells.push_back(interact::to_string(spec.location));
  if (spec.variable.general) {
    cells.push_back("general");
    cells.insert(cells.end(), 4, "");
  } else {
    cells.push_back("specific");
    cells.push_back(deps::to_string(spec.variable.dep_type.relation));
    cells.push_back(deps::short_kind(spec.variable.dep_type.source_kind));
    cells.push_back(deps::short_kind(spec.variable.dep_type.target_kind));
    cells.push_back(interact::to_string(spec.variable.direction));
  }
}

const std::vector<std::string> kSpecColumns = {
    "pair", "baseline", "location", "variable",
    "relation", "source_kind", "target_kind", "direction"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

json smell_count_json(const std::array<int, smells::kSmellKindCount>& counts) {
  json out;
  for (int k = 0; k < smells::kSmellKindCount; ++k) {
    out[smells::to_string(static_cast<SmellKind>(k))] = counts[k];
  }
  return out;
}

}  // namespace

const char* to_string(DependencyRole role) {
  return role == DependencyRole::Provider ? "Provider" : "Consumer";
}

const char* to_string(TypologyClass cls) {
  switch (cls) {
    case TypologyClass::Strong: return "Strong";
    case TypologyClass::Weak: return "Weak";
    case TypologyClass::Unclassified: return "Unclassified";
    case TypologyClass::NotApplicable: return "NotApplicable";
  }
  return "NotApplicable";
}

std::string TypologyEntry::dimension() const {
  std::string base = family;
  if (family == kDataAccessFamily) base = "Data";
  if (family == kFmCallFamily) base = "FM";
  return base + " " + to_string(role);
}

std::vector<TypologyEntry> classify_typology(const AnalysisResults& results,
                                             const AnalysisConfig& config) {
  std::vector<TypologyEntry> out;
  if (results.families.empty()) return out;

  std::vector<RelativeLocation> locations = {RelativeLocation::Different};
  if (config.typology_include_same) locations.push_back(RelativeLocation::Same);

  for (int s = 0; s < smells::kSmellKindCount; ++s) {
    SmellKind smell = static_cast<SmellKind>(s);
    for (const std::string& family : family_names()) {
      for (DependencyRole role : {DependencyRole::Provider, DependencyRole::Consumer}) {
        for (RelativeLocation location : locations) {
          TypologyEntry entry;
          entry.smell = smell;
          entry.family = family;
          entry.role = role;
          entry.location = location;
          for (const FamilyRow& row : results.families) {
            if (row.family != family || row.spec.location != location) continue;
            if (characterized_smell(row.spec.pair, row.spec.baseline) != smell) continue;
            if (characterized_role(row.spec.baseline, row.spec.direction) != role) continue;
            if (row.outcome.status != stats::ContrastStatus::Impossible) ++entry.feasible;
            if (row.outcome.status != stats::ContrastStatus::Tested) continue;
            if (!config.typology_all_cells && !row.significant) continue;
            ++entry.considered;
            if (row.outcome.result.delta > 0.0) ++entry.increases;
            if (row.outcome.result.delta < 0.0) ++entry.decreases;
          }
          if (entry.feasible == 0) {
            entry.classification = TypologyClass::NotApplicable;
          } else if (entry.increases > entry.decreases) {
            entry.classification = TypologyClass::Strong;
          } else if (entry.decreases > entry.increases) {
            entry.classification = TypologyClass::Weak;
          } else {
            entry.classification = TypologyClass::Unclassified;
          }
          out.push_back(std::move(entry));
        }
      }
    }
  }
  return out;
}

ReportBundle build_reports(const AnalysisResults& results, const AnalysisConfig& config) {
  ReportBundle bundle;
  std::vector<std::pair<std::string, std::size_t>> csv_rows;

  auto add_csv = [&](const std::string& name, const CsvWriter& csv, std::size_t rows) {
    bundle.files.emplace_back(name, csv.str());
    csv_rows.emplace_back(name, rows);
  };

  std::map<std::string, const ContrastRow*> union_by_key;
  for (const ContrastRow& row : results.union_contrasts) union_by_key[spec_key(row.spec)] = &row;
  auto union_row = [&](const stats::ContrastSpec& spec) -> const ContrastRow& {
    auto it = union_by_key.find(spec_key(spec));
    if (it == union_by_key.end()) {
      throw std::runtime_error("results lack the contrast " + spec_key(spec));
    }
    return *it->second;
  };

  // frequency.csv — the interaction-frequency matrix in long form.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header({"cs1", "cs2", "interacting", "total", "percentage", "status"});
    for (const FrequencyCell& cell : results.frequencies) {
      std::vector<std::string> cells = {smells::to_string(cell.cs1), smells::to_string(cell.cs2),
                                        CsvWriter::cell(cell.interacting),
                                        CsvWriter::cell(cell.total)};
      if (cell.total > 0) {
        cells.push_back(format_double(100.0 * cell.interacting / cell.total));
        cells.push_back("counted");
      } else {
        cells.push_back("");
        cells.push_back("absent");
      }
      csv.row(std::move(cells));
      ++rows;
    }
    add_csv("frequency.csv", csv, rows);
  }

  // general_heatmap.csv — the whole-interaction-set contrasts, the
  // different-class block first.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header(concat({"cs1", "cs2", "location", "baseline"}, kOutcomeColumns));
    if (!results.union_contrasts.empty()) {
      for (RelativeLocation location : {RelativeLocation::Different, RelativeLocation::Same}) {
        for (const interact::SmellPair& pair : interact::all_smell_pairs()) {
          for (InteractionType baseline :
               {InteractionType::CS1_nonCS2, InteractionType::nonCS1_CS2}) {
            stats::ContrastSpec spec;
            spec.pair = pair;
            spec.baseline = baseline;
            spec.location = location;
            spec.variable.general = true;
            const ContrastRow& row = union_row(spec);
            std::vector<std::string> cells = {smells::to_string(pair.cs1),
                                              smells::to_string(pair.cs2),
                                              interact::to_string(location),
                                              interact::to_string(baseline)};
            append_outcome(cells, row.outcome, row.significant);
            csv.row(std::move(cells));
            ++rows;
          }
        }
      }
    }
    add_csv("general_heatmap.csv", csv, rows);
  }

  // specific_heatmap.csv — one 5×5 grid per dependency type, location, and
  // grid sense; each cell varies the row smell against the column smell.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header(concat({"relation", "source_kind", "target_kind", "location", "grid", "row",
                       "col", "pair", "baseline", "direction"},
                      kOutcomeColumns));
    if (!results.union_contrasts.empty()) {
      for (const deps::DependencyType& t : deps::all_valid_triples()) {
        for (RelativeLocation location : {RelativeLocation::Different, RelativeLocation::Same}) {
          for (bool row_to_col : {true, false}) {
            for (int r = 0; r < smells::kSmellKindCount; ++r) {
              for (int c = 0; c < smells::kSmellKindCount; ++c) {
                std::vector<std::string> cells = {
                    deps::to_string(t.relation), deps::short_kind(t.source_kind),
                    deps::short_kind(t.target_kind), interact::to_string(location),
                    row_to_col ? "row-to-col" : "col-to-row",
                    smells::to_string(static_cast<SmellKind>(r)),
                    smells::to_string(static_cast<SmellKind>(c))};
                if (r == c) {
                  cells.insert(cells.end(), 3, "");
                  append_masked(cells);
                } else {
                  CellSpec cell = cell_spec(static_cast<SmellKind>(r),
                                            static_cast<SmellKind>(c), row_to_col);
                  stats::ContrastSpec spec;
                  spec.pair = cell.pair;
                  spec.baseline = cell.baseline;
                  spec.location = location;
                  spec.variable.general = false;
                  spec.variable.dep_type = t;
                  spec.variable.direction = cell.direction;
                  const ContrastRow& row = union_row(spec);
                  cells.push_back(cell.pair.label());
                  cells.push_back(interact::to_string(cell.baseline));
                  cells.push_back(interact::to_string(cell.direction));
                  append_outcome(cells, row.outcome, row.significant);
                }
                csv.row(std::move(cells));
                ++rows;
              }
            }
          }
        }
      }
    }
    add_csv("specific_heatmap.csv", csv, rows);
  }

  // family_heatmap.csv — the same grids over the aggregated families.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header(concat({"family", "location", "grid", "row", "col", "pair", "baseline",
                       "direction"},
                      kOutcomeColumns));
    if (!results.families.empty()) {
      std::map<std::string, const FamilyRow*> family_by_key;
      for (const FamilyRow& row : results.families) {
        family_by_key[family_key(row.family, row.spec.pair, row.spec.baseline,
                                 row.spec.location, row.spec.direction)] = &row;
      }
      for (const std::string& family : family_names()) {
        for (RelativeLocation location : {RelativeLocation::Different, RelativeLocation::Same}) {
          for (bool row_to_col : {true, false}) {
            for (int r = 0; r < smells::kSmellKindCount; ++r) {
              for (int c = 0; c < smells::kSmellKindCount; ++c) {
                std::vector<std::string> cells = {
                    family, interact::to_string(location),
                    row_to_col ? "row-to-col" : "col-to-row",
                    smells::to_string(static_cast<SmellKind>(r)),
                    smells::to_string(static_cast<SmellKind>(c))};
                if (r == c) {
                  cells.insert(cells.end(), 3, "");
                  append_masked(cells);
                } else {
                  CellSpec cell = cell_spec(static_cast<SmellKind>(r),
                                            static_cast<SmellKind>(c), row_to_col);
                  std::string key =
                      family_key(family, cell.pair, cell.baseline, location, cell.direction);
                  auto it = family_by_key.find(key);
                  if (it == family_by_key.end()) {
                    throw std::runtime_error("results lack the family contrast " + key);
                  }
                  cells.push_back(cell.pair.label());
                  cells.push_back(interact::to_string(cell.baseline));
                  cells.push_back(interact::to_string(cell.direction));
                  append_outcome(cells, it->second->outcome, it->second->significant);
                }
                csv.row(std::move(cells));
                ++rows;
              }
            }
          }
        }
      }
    }
    add_csv("family_heatmap.csv", csv, rows);
  }

  // rejections.csv — per dependency type, how many union tests rejected.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header({"relation", "source_kind", "target_kind", "conducted", "rejecting",
                "rejecting_excluding_negligible"});
    for (const RejectionRow& row : results.rejections) {
      csv.row({deps::to_string(row.dep_type.relation), deps::short_kind(row.dep_type.source_kind),
               deps::short_kind(row.dep_type.target_kind), CsvWriter::cell(row.conducted),
               CsvWriter::cell(row.rejecting),
               CsvWriter::cell(row.rejecting_excluding_negligible)});
      ++rows;
    }
    add_csv("rejections.csv", csv, rows);
  }

  // per_system.csv — significance rate and consistency score per contrast.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header(concat(kSpecColumns, {"included", "significance_rate", "consistency"}));
    for (const stats::PerSystemSummary& s : results.summaries) {
      std::vector<std::string> cells;
      append_spec(cells, s.spec);
      cells.push_back(CsvWriter::cell(s.included_projects));
      cells.push_back(format_double(s.significance_rate));
      cells.push_back(format_double(s.consistency_score));
      csv.row(std::move(cells));
      ++rows;
    }
    add_csv("per_system.csv", csv, rows);
  }

  // results.csv — every contrast outcome, union rows first.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header(concat(concat({"perspective", "project"}, kSpecColumns), kOutcomeColumns));
    auto emit = [&](const ContrastRow& row) {
      std::vector<std::string> cells = {stats::to_string(row.perspective), row.project};
      append_spec(cells, row.spec);
      append_outcome(cells, row.outcome, row.significant);
      csv.row(std::move(cells));
      ++rows;
    };
    for (const ContrastRow& row : results.union_contrasts) emit(row);
    for (const ContrastRow& row : results.project_contrasts) emit(row);
    add_csv("results.csv", csv, rows);
  }

  // typology.csv — the classification per smell, family, and role.
  {
    CsvWriter csv;
    std::size_t rows = 0;
    csv.header({"smell", "location", "dimension", "classification", "increases", "decreases",
                "considered", "feasible"});
    for (const TypologyEntry& entry : classify_typology(results, config)) {
      csv.row({smells::to_string(entry.smell), interact::to_string(entry.location),
               entry.dimension(), to_string(entry.classification),
               CsvWriter::cell(entry.increases), CsvWriter::cell(entry.decreases),
               CsvWriter::cell(entry.considered), CsvWriter::cell(entry.feasible)});
      ++rows;
    }
    add_csv("typology.csv", csv, rows);
  }

  // summary.json — the run's headline numbers plus test metadata.
  {
    json corpus;
    corpus["projects"] = results.projects.size();
    long long types = 0, methods = 0, loc = 0, artifacts = 0, edges = 0;
    std::array<int, smells::kSmellKindCount> smell_sums{};
    json project_list = json::array();
    for (const ProjectSummaryFacts& p : results.projects) {
      types += p.types;
      methods += p.methods;
      loc += p.loc;
      artifacts += p.artifacts;
      edges += p.edges;
      for (int k = 0; k < smells::kSmellKindCount; ++k) smell_sums[k] += p.smell_counts[k];
      project_list.push_back(json{{"id", p.id},
                                  {"types", p.types},
                                  {"methods", p.methods},
                                  {"loc", p.loc},
                                  {"artifacts", p.artifacts},
                                  {"edges", p.edges},
                                  {"smells", smell_count_json(p.smell_counts)}});
    }
    corpus["types"] = types;
    corpus["methods"] = methods;
    corpus["loc"] = loc;
    corpus["artifacts"] = artifacts;
    corpus["edges"] = edges;
    corpus["smells"] = smell_count_json(smell_sums);

    auto tally = [](const auto& rows, long long tests_run) {
      json out;
      long long tested = 0, impossible = 0, absent = 0, significant = 0;
      for (const auto& row : rows) {
        switch (row.outcome.status) {
          case stats::ContrastStatus::Tested: ++tested; break;
          case stats::ContrastStatus::Impossible: ++impossible; break;
          case stats::ContrastStatus::Absent: ++absent; break;
        }
        if (row.significant) ++significant;
      }
      out["tested"] = tested;
      out["impossible"] = impossible;
      out["absent"] = absent;
      out["significant"] = significant;
      if (tests_run >= 0) out["tests_run"] = tests_run;
      return out;
    };

    json summary;
    summary["config"] = config.to_json();
    summary["corpus"] = std::move(corpus);
    summary["contrasts"] =
        json{{"union", tally(results.union_contrasts, results.union_tests_run)},
             {"per_system", tally(results.project_contrasts, results.per_system_tests_run)}};
    summary["families"] = tally(results.families, -1);
    summary["mwu"] = json{{"statistic", "min(U1, U2)"},
                          {"p_value", "two-sided"},
                          {"exact_cutoff", config.exact_cutoff},
                          {"approximation", "normal with tie correction and continuity correction"}};
    summary["projects"] = std::move(project_list);
    bundle.files.emplace_back("summary.json", summary.dump(2) + "\n");
  }

  // index.json — the bundle manifest, config embedded verbatim.
  {
    json files = json::array();
    for (const auto& [name, rows] : csv_rows) {
      files.push_back(json{{"name", name}, {"rows", rows}});
    }
    files.push_back(json{{"name", "summary.json"}});
    json index;
    index["format"] = "smelldep-report-index";
    index["version"] = 1;
    index["config"] = config.to_json();
    index["files"] = std::move(files);
    bundle.files.emplace_back("index.json", index.dump(2) + "\n");
  }

  return bundle;
}

}  // namespace smelldep::report
