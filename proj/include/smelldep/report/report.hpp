#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smelldep/report/analysis.hpp"

namespace smelldep::report {

// Whether the smell's side of the interaction receives the dependency
// (Provider: its closure holds the targets) or originates it (Consumer).
enum class DependencyRole { Provider, Consumer };
const char* to_string(DependencyRole role);

// Strong: interacting instances show more of the dependency than the
// non-smelly counterpart; Weak: fewer. Unclassified marks a sign tie —
// surfaced, never guessed. NotApplicable marks dimensions with no
// structurally feasible cell (e.g. a method-level smell as data provider).
enum class TypologyClass { Strong, Weak, Unclassified, NotApplicable };
const char* to_string(TypologyClass cls);

struct TypologyEntry {
  smells::SmellKind smell = smells::SmellKind::FE;
  std::string family;  // kDataAccessFamily or kFmCallFamily
  DependencyRole role = DependencyRole::Provider;
  interact::RelativeLocation location = interact::RelativeLocation::Different;
  TypologyClass classification = TypologyClass::NotApplicable;
  int increases = 0;   // cells counted with a positive delta
  int decreases = 0;   // cells counted with a negative delta
  int considered = 0;  // cells whose sign was counted
  int feasible = 0;    // cells not structurally impossible
  // "Data Provider", "FM Consumer", ... — the published table's vocabulary.
  std::string dimension() const;
};

// Aggregates each smell's family contrasts into the typology: one entry per
// smell × family × role over different-class results (plus same-class rows
// when configured). By default the sign majority runs over significant cells
// only; the all-cells mode counts every tested cell.
std::vector<TypologyEntry> classify_typology(const AnalysisResults& results,
                                             const AnalysisConfig& config);

// The rendered report files in emission order (names are relative to the
// report directory). A pure function of results and configuration: nothing
// here re-runs statistics, touches the clock, or reads the filesystem.
struct ReportBundle {
  std::vector<std::pair<std::string, std::string>> files;
};

ReportBundle build_reports(const AnalysisResults& results, const AnalysisConfig& config);

}  // namespace smelldep::report
