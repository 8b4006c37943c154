#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smelldep/deps/dependency.hpp"
#include "smelldep/interact/interaction.hpp"

namespace smelldep::stats {

// ---------------------------------------------------------------------------
// core tests

// |delta| bands: < 0.147 negligible, < 0.33 small, < 0.474 medium, else large.
enum class EffectBand { Negligible, Small, Medium, Large };
const char* to_string(EffectBand band);
EffectBand band_of(double delta);

struct MwuResult {
  double u = 0.0;  // min(U1, U2), midranks for ties
  double p = 1.0;  // two-sided
};

// Ranks with midranks for ties. p is exact by subset enumeration when
// n1 + n2 <= 16 (doubled midranks keep the arithmetic integral, ties
// included); larger samples use the normal approximation with tie-corrected
// variance and a 0.5 continuity correction. Empty sides are a contract
// violation (std::invalid_argument) — callers skip those contrasts.
MwuResult mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y);

// delta = (#{x_i > y_j} - #{x_i < y_j}) / (n1*n2), computed by sort-merge.
double cliffs_delta(const std::vector<double>& x, const std::vector<double>& y);

namespace detail {
// The large-sample branch in isolation: tie-corrected, continuity-corrected
// normal approximation of the two-sided p. mann_whitney_u switches to it
// above 16 pooled observations; tests call it directly to measure how far
// it drifts from exact enumeration on small samples.
double approx_p(const std::vector<double>& x, const std::vector<double>& y);
}  // namespace detail

// ---------------------------------------------------------------------------
// contrasts

// The dependent variable of a contrast: the record's whole interaction-set
// size, or the count of its edges matching one dependency type and direction.
struct Variable {
  bool general = true;
  deps::DependencyType dep_type{};       // meaningful when !general
  interact::FlowDirection direction = interact::FlowDirection::Forward;

  std::string label() const;  // "general" or e.g. "(call, FM, Accessor) Forward"
};

// One hypothesis: CS1-CS2 records vs one baseline type, at one location,
// for one dependent variable.
struct ContrastSpec {
  interact::SmellPair pair;
  interact::InteractionType baseline = interact::InteractionType::CS1_nonCS2;
  interact::RelativeLocation location = interact::RelativeLocation::Different;
  Variable variable;
};

struct TestResult {
  double u = 0.0;
  double p = 1.0;
  double delta = 0.0;
  EffectBand band = EffectBand::Negligible;
  double median1 = 0.0;  // CS1-CS2 side
  double median2 = 0.0;  // baseline side
  int n1 = 0;
  int n2 = 0;
  bool significant = false;  // p < 0.05, two-sided
};

// Tested carries a TestResult. The two skip markers are distinct on purpose:
// Impossible means no record could ever satisfy the spec (same-location
// class pairs; triples that cannot bridge the two closures), Absent means
// the corpus just lacks records on one side.
enum class ContrastStatus { Tested, Impossible, Absent };
const char* to_string(ContrastStatus status);

struct ContrastOutcome {
  ContrastStatus status = ContrastStatus::Absent;
  TestResult result;  // meaningful when status == Tested
};

// A dataset decoupled from the dependency graph: each record edge carries
// its own triple, mirroring the persisted form.
struct RecordView {
  interact::InteractionType type = interact::InteractionType::CS1_CS2;
  interact::RelativeLocation location = interact::RelativeLocation::Different;
  std::vector<std::pair<deps::DependencyType, interact::FlowDirection>> edges;
};

struct DatasetView {
  std::string project_id;
  interact::SmellPair pair;
  std::vector<RecordView> records;
};

DatasetView make_view(const interact::PairDataset& dataset, const deps::DependencyGraph& graph);

// Structural feasibility of the spec, independent of any corpus: location
// and variable must be reachable for the pair's artifact kinds.
bool spec_possible(const ContrastSpec& spec);

ContrastOutcome run_contrast(const DatasetView& dataset, const ContrastSpec& spec);

// A contrast over a group of dependency types treated as one variable: each
// record's value is its edge count summed across the member triples, in the
// given direction. Groups back the data-access and FM-call aggregates of the
// typology; a single-element group reduces to the plain specific contrast.
struct FamilyContrastSpec {
  interact::SmellPair pair;
  interact::InteractionType baseline = interact::InteractionType::CS1_nonCS2;
  interact::RelativeLocation location = interact::RelativeLocation::Different;
  std::vector<deps::DependencyType> triples;  // nonempty, each valid
  interact::FlowDirection direction = interact::FlowDirection::Forward;
};

// Feasible when any member triple could bridge the two closures — infeasible
// members merely contribute constant zero.
bool family_possible(const FamilyContrastSpec& spec);

ContrastOutcome run_family_contrast(const DatasetView& dataset, const FamilyContrastSpec& spec);

// ---------------------------------------------------------------------------
// the study

enum class Perspective { Union, PerSystem };
const char* to_string(Perspective perspective);

// General first, then every valid triple in table order, each in both
// directions — the full sweep run for each of the four contrasts per pair.
const std::vector<Variable>& all_variables();

struct ContrastResult {
  ContrastSpec spec;
  ContrastOutcome outcome;
};

struct ProjectContrastResult {
  std::string project_id;
  ContrastResult result;
};

struct PerSystemSummary {
  ContrastSpec spec;
  int included_projects = 0;      // projects where the contrast was testable
  double significance_rate = 0.0; // significant / included, 0 when none
  double consistency_score = 0.0; // (nonnegative delta - negative delta) / included
};

// Count of tests rejecting the null per dependency type, with the raw
// significance criterion and with the small-effect filter (|delta| must
// leave the negligible band) applied on top.
struct RejectionCount {
  deps::DependencyType dep_type;
  int rejecting = 0;
  int rejecting_excluding_negligible = 0;
};

struct StudyInput {
  std::vector<DatasetView> datasets;  // one per (project, pair) with records
};

struct StudyResults {
  Perspective perspective = Perspective::Union;
  // Union: one row per spec over the pooled records.
  std::vector<ContrastResult> contrasts;
  // PerSystem: the per-project rows and their aggregation.
  std::vector<ProjectContrastResult> project_contrasts;
  std::vector<PerSystemSummary> summaries;
  // Both perspectives: totals over whatever Specific tests actually ran.
  std::vector<RejectionCount> rejections;
  int tests_run = 0;  // Tested outcomes, for downstream corrections
};

StudyResults run_study(const StudyInput& input, Perspective perspective);

// ---------------------------------------------------------------------------
// evaluation sampling

// Sample size for a 95% confidence, ±margin proportion estimate with the
// finite-population correction: n0 = z^2 * 0.25 / margin^2, z = 1.959964,
// n = ceil(n0 / (1 + (n0 - 1) / N)). N must be >= 1.
int sample_size(long long population, double margin = 0.10);

// Proportional allocation by largest remainder, then a seeded simple random
// sample without replacement inside each project; ids are 0-based indices
// into the project's population. Deterministic for one (counts, n, seed).
// n greater than the total population is an error (std::invalid_argument).
std::map<std::string, std::vector<int>> stratified_sample(
    const std::map<std::string, int>& per_project_counts, int n, std::uint64_t seed);

}  // namespace smelldep::stats
