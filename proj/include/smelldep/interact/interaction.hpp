#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smelldep/deps/dependency.hpp"
#include "smelldep/model/code_model.hpp"
#include "smelldep/smells/smells.hpp"

namespace smelldep::interact {

// Whether the two artifacts of a record live in one class. A member's class
// is its declaring type; a Class artifact's class is itself, so two distinct
// Class artifacts are always Different.
enum class RelativeLocation { Same, Different };

// Forward = the record's first-side artifact (the CS1 or nonCS1 side) is the
// edge source; Backward = it is the target.
enum class FlowDirection { Forward, Backward };

// CS1-CS2 = both sides smelly for the pair; the other two replace one side
// with a non-smelly artifact of the same kind (which may carry other smells).
enum class InteractionType { CS1_CS2, CS1_nonCS2, nonCS1_CS2 };
inline constexpr int kInteractionTypeCount = 3;

const char* to_string(RelativeLocation v);
const char* to_string(FlowDirection v);
const char* to_string(InteractionType v);
bool relative_location_from_string(const std::string& s, RelativeLocation& out);
bool flow_direction_from_string(const std::string& s, FlowDirection& out);
bool interaction_type_from_string(const std::string& s, InteractionType& out);

// An unordered smell pair in canonical order (cs1 precedes cs2 in SmellKind
// declaration order). The order fixes record orientation and flow direction.
struct SmellPair {
  smells::SmellKind cs1;
  smells::SmellKind cs2;

  friend bool operator==(const SmellPair& a, const SmellPair& b) {
    return a.cs1 == b.cs1 && a.cs2 == b.cs2;
  }
  std::string label() const;  // e.g. "GC-DC"
};

// The 10 unordered pairs of distinct kinds, canonical order.
const std::vector<SmellPair>& all_smell_pairs();

// For types: the type plus its direct members (fields, methods,
// constructors; nested types stand alone). For everything else: {artifact}.
std::vector<int> closure(const model::CodeModel& model, int artifact);

// All edges connecting closure(a1) and closure(a2), each tagged Forward
// (a1 side is the source) or Backward. When one artifact is a member of the
// other, it is removed from the containing type's closure, so the set holds
// only edges between the member and the rest of the type. Result is edge
// indices into graph.edges, ascending. a1 == a2 is a contract violation
// (std::invalid_argument).
std::vector<std::pair<int, FlowDirection>> interaction_set(const model::CodeModel& model,
                                                           const deps::DependencyGraph& graph,
                                                           int a1, int a2);

RelativeLocation relative_location(const model::CodeModel& model, int a1, int a2);

// One interacting artifact pair: the first side is the CS1 (or nonCS1)
// artifact, the second the CS2 (or nonCS2) one.
struct InteractionRecord {
  InteractionType type = InteractionType::CS1_CS2;
  int a1 = -1;
  int a2 = -1;
  RelativeLocation location = RelativeLocation::Different;
  std::vector<std::pair<int, FlowDirection>> edges;  // nonempty by construction
};

struct PairDataset {
  std::string project_id;
  SmellPair pair;
  std::vector<InteractionRecord> records;
};

// Enumerates every interacting artifact pair for the smell pair and labels
// it. An unordered artifact pair qualifying as CS1-CS2 is emitted only as
// CS1-CS2; otherwise it may yield one record per qualifying baseline type.
// When both orientations of one type qualify, the side with the smaller
// artifact id leads. Records are sorted by (type, first id, second id).
PairDataset build_pair_dataset(const model::CodeModel& model, const deps::DependencyGraph& graph,
                               const smells::Detection& detection, SmellPair pair);

// How many distinct cs1-flagged artifacts interact with at least one
// cs2-flagged artifact. total == 0 means the frequency is undefined (no cs1
// instances) and is reported as an absent cell.
struct Frequency {
  int interacting = 0;
  int total = 0;

  double percentage() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(interacting) / static_cast<double>(total);
  }
};

Frequency interaction_frequency(const model::CodeModel& model, const deps::DependencyGraph& graph,
                                const smells::Detection& detection, smells::SmellKind cs1,
                                smells::SmellKind cs2);

}  // namespace smelldep::interact
