#pragma once

#include <vector>

#include <json.hpp>

#include "smelldep/model/code_model.hpp"
#include "smelldep/model/resolve.hpp"

namespace smelldep::metrics {

// Method-level measurements. Attribute counts use set semantics (distinct
// fields, not occurrences); "foreign" means the field's declaring type is not
// the method's class or one of its resolved supertypes. Access via an
// accessor counts toward the backing field.
struct MethodMetrics {
  int loc = 0;         // code lines in the declaration's span
  int cyclo = 1;       // decision points + 1 (see docs/metric-definitions.md)
  int maxnesting = 0;  // deepest block nesting; a present body counts as 1
  int noav = 0;        // accessed locals + parameters + directly accessed fields
  int atfd_m = 0;      // distinct foreign fields accessed, directly or via accessors
  int fdp = 0;         // distinct classes providing those foreign fields
  double laa = 1.0;    // own / (own + foreign) accessed fields; 1 when none
};

struct ClassMetrics {
  int wmc = 0;       // sum of member method + constructor CYCLO
  int atfd_c = 0;    // union of member callables' foreign-field sets
  int loc_c = 0;     // code lines in the class's span
  int noap = 0;      // public attributes, constants (static final) excluded
  int noam = 0;      // accessor members
  int nom = 0;       // methods (functional + accessor; constructors excluded)
  int bm_count = 0;  // Brain Method members (filled via the detector's flags)
  double tcc = 1.0;  // connected visible method pairs / all visible pairs
  double woc = 0.0;  // functional public methods / (public methods + NOAP)
};

// Detection thresholds. Defaults follow the Lanza–Marinescu strategies with
// the stricter bound of every published range; all values are configurable
// and every report records the active set.
struct ThresholdConfig {
  int few_upper = 5;
  int few_lower = 2;
  double one_third = 0.33;
  double half = 0.5;
  int high_wmc = 31;
  int very_high_wmc = 47;
  int high_method_loc = 65;
  double high_cyclo_ratio = 0.24;
  int several = 5;
  int many = 7;
  int many_attr = 10;

  // JSON object keyed by the canonical names (FEW_upper, ONE_THIRD, ...).
  // Unknown keys and non-positive values are errors; absent keys keep their
  // defaults. to_json emits every value, so reports show the full active set.
  static ThresholdConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

MethodMetrics compute_method_metrics(const model::CodeModel& model, int artifact,
                                     const model::BodyFacts& facts);

// `method_table` must hold metrics for every callable member; `brain_method`
// flags (indexed by artifact) feed BM_count — pass all-false before Brain
// Method detection has run.
ClassMetrics compute_class_metrics(const model::CodeModel& model, int cls_artifact,
                                   const std::vector<model::BodyFacts>& facts,
                                   const std::vector<MethodMetrics>& method_table,
                                   const std::vector<bool>& brain_method);

// Both tables, indexed by artifact; entries are meaningful where the artifact
// kind matches (callables / classes) and default-constructed elsewhere.
struct MetricsTable {
  std::vector<MethodMetrics> method;
  std::vector<ClassMetrics> cls;
};

}  // namespace smelldep::metrics
