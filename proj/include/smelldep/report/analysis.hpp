#pragma once

#include <string>
#include <vector>

#include "smelldep/report/config.hpp"
#include "smelldep/report/facts.hpp"
#include "smelldep/stats/stats.hpp"

namespace smelldep::report {

// The two dependency-type groups the typology aggregates, as named in the
// study: data access = accessor calls plus direct field uses by functional
// methods; FM call = functional-method-to-functional-method calls.
inline constexpr const char* kDataAccessFamily = "data-access";
inline constexpr const char* kFmCallFamily = "fm-call";
const std::vector<deps::DependencyType>& data_access_family();
const std::vector<deps::DependencyType>& fm_call_family();
const std::vector<std::string>& family_names();
const std::vector<deps::DependencyType>& family_members(const std::string& family);

// One statistical comparison as reported: the significance flag is evaluated
// against the run's α, which may differ from the 0.05 the statistics layer
// marks internally.
struct ContrastRow {
  stats::Perspective perspective = stats::Perspective::Union;
  std::string project;  // empty under the union perspective
  stats::ContrastSpec spec;
  stats::ContrastOutcome outcome;
  bool significant = false;
};

struct FamilyRow {
  std::string family;
  stats::FamilyContrastSpec spec;
  stats::ContrastOutcome outcome;
  bool significant = false;
};

// Rejection counts per dependency type over the union perspective's specific
// contrasts: how many were conducted (tested at all), how many rejected the
// null at α, and how many of those also showed a non-negligible effect.
struct RejectionRow {
  deps::DependencyType dep_type;
  int conducted = 0;
  int rejecting = 0;
  int rejecting_excluding_negligible = 0;
};

// Everything the report bundle renders, persisted as results.ndjson
// ("smelldep-results") so reports re-render without re-running statistics.
struct AnalysisResults {
  std::vector<ProjectSummaryFacts> projects;     // processing order
  std::vector<FrequencyCell> frequencies;        // union-aggregated, 20 cells
  std::vector<ContrastRow> union_contrasts;      // full sweep, spec order
  std::vector<ContrastRow> project_contrasts;    // spec-major, projects within
  std::vector<stats::PerSystemSummary> summaries;
  std::vector<FamilyRow> families;               // union perspective
  std::vector<RejectionRow> rejections;          // 31 rows, triple order
  long long union_tests_run = 0;
  long long per_system_tests_run = 0;
};

// Runs both study perspectives plus the family contrasts over the loaded
// interaction facts. Frequencies are summed across projects (artifact sets
// are disjoint, so corpus totals add). Throws std::invalid_argument when
// `projects` is empty.
AnalysisResults analyze(const std::vector<InteractionFacts>& projects,
                        const AnalysisConfig& config);

std::string render_result_facts(const AnalysisResults& results, const AnalysisConfig& config);
AnalysisResults load_result_facts(const std::string& path);

}  // namespace smelldep::report
