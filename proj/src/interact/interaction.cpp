#include "smelldep/interact/interaction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace smelldep::interact {

using model::ArtifactKind;
using model::CodeModel;
using smells::SmellKind;

const char* to_string(RelativeLocation v) {
  return v == RelativeLocation::Same ? "Same" : "Different";
}

const char* to_string(FlowDirection v) {
  return v == FlowDirection::Forward ? "Forward" : "Backward";
}

const char* to_string(InteractionType v) {
  switch (v) {
    case InteractionType::CS1_CS2: return "CS1-CS2";
    case InteractionType::CS1_nonCS2: return "CS1-nonCS2";
    case InteractionType::nonCS1_CS2: return "nonCS1-CS2";
  }
  return "?";
}

bool relative_location_from_string(const std::string& s, RelativeLocation& out) {
  if (s == "Same") {
    out = RelativeLocation::Same;
  } else if (s == "Different") {
    out = RelativeLocation::Different;
  } else {
    return false;
  }
  return true;
}

bool flow_direction_from_string(const std::string& s, FlowDirection& out) {
  if (s == "Forward") {
    out = FlowDirection::Forward;
  } else if (s == "Backward") {
    out = FlowDirection::Backward;
  } else {
    return false;
  }
  return true;
}

bool interaction_type_from_string(const std::string& s, InteractionType& out) {
  if (s == "CS1-CS2") {
    out = InteractionType::CS1_CS2;
  } else if (s == "CS1-nonCS2") {
    out = InteractionType::CS1_nonCS2;
  } else if (s == "nonCS1-CS2") {
    out = InteractionType::nonCS1_CS2;
  } else {
    return false;
  }
  return true;
}

std::string SmellPair::label() const {
  return std::string(smells::to_string(cs1)) + "-" + smells::to_string(cs2);
}

const std::vector<SmellPair>& all_smell_pairs() {
  static const std::vector<SmellPair> pairs = [] {
    std::vector<SmellPair> out;
    for (int i = 0; i < smells::kSmellKindCount; ++i) {
      for (int j = i + 1; j < smells::kSmellKindCount; ++j) {
        out.push_back({static_cast<SmellKind>(i), static_cast<SmellKind>(j)});
      }
    }
    return out;
  }();
  return pairs;
}

std::vector<int> closure(const CodeModel& model, int artifact) {
  std::vector<int> out{artifact};
  if (model.at(artifact).is_type()) {
    const std::vector<int>& ms = model.members[artifact];
    out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

namespace {

std::set<int> closure_set(const CodeModel& model, int artifact) {
  std::vector<int> c = closure(model, artifact);
  return std::set<int>(c.begin(), c.end());
}

}  // namespace

std::vector<std::pair<int, FlowDirection>> interaction_set(const CodeModel& model,
                                                           const deps::DependencyGraph& graph,
                                                           int a1, int a2) {
  if (a1 == a2) {
    throw std::invalid_argument("interaction_set: the two artifacts must be distinct");
  }
  std::set<int> s1 = closure_set(model, a1);
  std::set<int> s2 = closure_set(model, a2);
  // A member paired with its own type would sit in both closures; dropping it
  // from the containing side keeps every edge attributed exactly once.
  if (s2.count(a1) != 0) s2.erase(a1);
  if (s1.count(a2) != 0) s1.erase(a2);

  std::vector<std::pair<int, FlowDirection>> out;
  for (int a : s1) {
    for (int e : graph.by_source[a]) {
      if (s2.count(graph.edges[e].target) != 0) out.emplace_back(e, FlowDirection::Forward);
    }
    for (int e : graph.by_target[a]) {
      if (s2.count(graph.edges[e].source) != 0) out.emplace_back(e, FlowDirection::Backward);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RelativeLocation relative_location(const CodeModel& model, int a1, int a2) {
  return model.class_of(a1) == model.class_of(a2) ? RelativeLocation::Same
                                                  : RelativeLocation::Different;
}

namespace {

// Artifacts of kind `kind` whose closure shares at least one edge with
// closure(x); exactly the partners y != x with a nonempty interaction set.
// For Class partners the edge endpoint maps to its declaring class; for
// method kinds the endpoint itself must have the kind.
std::set<int> interaction_partners(const CodeModel& model, const deps::DependencyGraph& graph,
                                   int x, ArtifactKind kind) {
  std::set<int> sx = closure_set(model, x);
  std::set<int> partners;
  auto consider = [&](int endpoint) {
    if (kind == ArtifactKind::Class) {
      int cls = model.class_of(endpoint);
      if (cls != x && model.at(cls).kind == ArtifactKind::Class) partners.insert(cls);
    } else if (endpoint != x && model.at(endpoint).kind == kind) {
      partners.insert(endpoint);
    }
  };
  for (int a : sx) {
    for (int e : graph.by_source[a]) consider(graph.edges[e].target);
    for (int e : graph.by_target[a]) consider(graph.edges[e].source);
  }
  return partners;
}

}  // namespace

PairDataset build_pair_dataset(const CodeModel& model, const deps::DependencyGraph& graph,
                               const smells::Detection& detection, SmellPair pair) {
  PairDataset ds;
  ds.project_id = model.project_id;
  ds.pair = pair;

  const ArtifactKind k1 = smells::artifact_kind_of(pair.cs1);
  const ArtifactKind k2 = smells::artifact_kind_of(pair.cs2);
  auto is1 = [&](int a) { return model.at(a).kind == k1 && detection.is(pair.cs1, a); };
  auto is2 = [&](int a) { return model.at(a).kind == k2 && detection.is(pair.cs2, a); };
  auto base1 = [&](int a) { return model.at(a).kind == k1 && !detection.is(pair.cs1, a); };
  auto base2 = [&](int a) { return model.at(a).kind == k2 && !detection.is(pair.cs2, a); };

  auto emit = [&](InteractionType type, int first, int second) {
    InteractionRecord rec;
    rec.type = type;
    rec.a1 = first;
    rec.a2 = second;
    rec.location = relative_location(model, first, second);
    rec.edges = interaction_set(model, graph, first, second);
    if (!rec.edges.empty()) ds.records.push_back(std::move(rec));
  };
  // Of the (p,q)/(q,p) orientations, fwd/rev say which qualify; the record
  // leads with the qualifying side, or the smaller id when both qualify.
  auto orient = [&](InteractionType type, int p, int q, bool fwd, bool rev) {
    if (fwd && rev) {
      emit(type, std::min(p, q), std::max(p, q));
    } else if (fwd) {
      emit(type, p, q);
    } else if (rev) {
      emit(type, q, p);
    }
  };

  std::set<std::pair<int, int>> seen;
  for (int x = 0; x < static_cast<int>(model.artifacts.size()); ++x) {
    if (model.at(x).kind != k1) continue;
    for (int y : interaction_partners(model, graph, x, k2)) {
      std::pair<int, int> key{std::min(x, y), std::max(x, y)};
      if (!seen.insert(key).second) continue;
      int p = key.first;
      int q = key.second;
      bool smelly_fwd = is1(p) && is2(q);
      bool smelly_rev = is1(q) && is2(p);
      if (smelly_fwd || smelly_rev) {
        // A pair smelly on both sides is never also counted as a baseline.
        orient(InteractionType::CS1_CS2, p, q, smelly_fwd, smelly_rev);
        continue;
      }
      orient(InteractionType::CS1_nonCS2, p, q, is1(p) && base2(q), is1(q) && base2(p));
      orient(InteractionType::nonCS1_CS2, p, q, base1(p) && is2(q), base1(q) && is2(p));
    }
  }

  std::sort(ds.records.begin(), ds.records.end(),
            [](const InteractionRecord& a, const InteractionRecord& b) {
              return std::tie(a.type, a.a1, a.a2) < std::tie(b.type, b.a1, b.a2);
            });
  return ds;
}

Frequency interaction_frequency(const CodeModel& model, const deps::DependencyGraph& graph,
                                const smells::Detection& detection, smells::SmellKind cs1,
                                smells::SmellKind cs2) {
  Frequency f;
  const ArtifactKind k2 = smells::artifact_kind_of(cs2);
  for (int x : detection.smelly[static_cast<int>(cs1)]) {
    ++f.total;
    for (int y : interaction_partners(model, graph, x, k2)) {
      if (detection.is(cs2, y)) {
        ++f.interacting;
        break;
      }
    }
  }
  return f;
}

}  // namespace smelldep::interact
