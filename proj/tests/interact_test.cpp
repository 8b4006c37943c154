#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fixture_gen.hpp"
#include "smelldep/deps/dependency.hpp"
#include "smelldep/interact/interaction.hpp"
#include "smelldep/model/code_model.hpp"
#include "smelldep/model/resolve.hpp"
#include "smelldep/smells/smells.hpp"
#include "smelldep/support/rand.hpp"

using namespace smelldep;
using namespace smelldep::interact;
using model::ArtifactKind;
using smells::SmellKind;

namespace {

const char* kExampleSource = R"(
class C1 {
  public void m1(C2 c2) { c2.m2(); }
}
class C2 {
  public void m2() { System.out.println("m2"); }
  public void m3() { new C1().m1(this); }
}
)";

struct World {
  model::CodeModel model;
  std::vector<model::BodyFacts> facts;
  deps::DependencyGraph graph;
  smells::Detection d;
};

World world(const std::vector<model::SourceFile>& sources,
            const metrics::ThresholdConfig& cfg = {}) {
  World w;
  w.model = model::build_code_model("p", sources);
  REQUIRE(w.model.diagnostics.items.empty());
  Diagnostics diags;
  w.facts = model::collect_body_facts(w.model, diags);
  w.graph = deps::extract_dependencies(w.model, w.facts);
  w.d = smells::detect_all(w.model, w.facts, cfg);
  return w;
}

World world(const std::string& source, const metrics::ThresholdConfig& cfg = {}) {
  return world(std::vector<model::SourceFile>{{"Example.java", source}}, cfg);
}

int aid(const World& w, const std::string& id) {
  int idx = w.model.find(id);
  REQUIRE(idx >= 0);
  return idx;
}

const InteractionRecord* find_record(const PairDataset& ds, InteractionType type, int a1, int a2) {
  for (const InteractionRecord& r : ds.records) {
    if (r.type == type && r.a1 == a1 && r.a2 == a2) return &r;
  }
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// closures and interaction sets

TEST_CASE("interact: a type's closure is itself plus its direct members") {
  World w = world(R"(
class Acc {
  private int total;
  private int count;
  Acc(int seed) { total = seed; }
  void bump(int v) { total = total + v; count = count + 1; }
}
)");
  std::vector<int> expected{aid(w, "Acc"), aid(w, "Acc#total"), aid(w, "Acc#count"),
                            aid(w, "Acc#<init>(int)"), aid(w, "Acc#bump(int)")};
  CHECK(closure(w.model, aid(w, "Acc")) == expected);
  CHECK(closure(w.model, aid(w, "Acc#bump(int)")) == std::vector<int>{aid(w, "Acc#bump(int)")});
}

TEST_CASE("interact: the running example's closures and interaction sets") {
  World w = world(kExampleSource);
  int c1 = aid(w, "C1");
  int c2 = aid(w, "C2");
  int m1 = aid(w, "C1#m1(C2)");
  int m2 = aid(w, "C2#m2()");
  int m3 = aid(w, "C2#m3()");

  CHECK(closure(w.model, c2) == std::vector<int>{c2, m2, m3});

  // m1 against C2: its parameter and call flow forward, m3's callback flows
  // back. The create edge touches C1 only and stays out.
  auto set = interaction_set(w.model, w.graph, m1, c2);
  REQUIRE(set.size() == 3);
  CHECK(set[0] == std::pair<int, FlowDirection>{0, FlowDirection::Forward});
  CHECK(set[1] == std::pair<int, FlowDirection>{1, FlowDirection::Forward});
  CHECK(set[2] == std::pair<int, FlowDirection>{3, FlowDirection::Backward});

  // Class against class picks up all four edges.
  auto classes = interaction_set(w.model, w.graph, c1, c2);
  REQUIRE(classes.size() == 4);
  CHECK(classes[0].second == FlowDirection::Forward);   // m1 -> C2 parameter
  CHECK(classes[1].second == FlowDirection::Forward);   // m1 -> m2 call
  CHECK(classes[2].second == FlowDirection::Backward);  // m3 -> C1 create
  CHECK(classes[3].second == FlowDirection::Backward);  // m3 -> m1 call

  // m2 sources nothing, but m1's call still reaches it from C1's side.
  auto callee = interaction_set(w.model, w.graph, m2, c1);
  REQUIRE(callee.size() == 1);
  CHECK(callee[0] == std::pair<int, FlowDirection>{1, FlowDirection::Backward});

  // Two methods with no edge between them do not interact.
  CHECK(interaction_set(w.model, w.graph, m2, m3).empty());

  CHECK_THROWS_AS((void)interaction_set(w.model, w.graph, c1, c1), std::invalid_argument);
}

TEST_CASE("interact: swapping the sides flips every direction") {
  World w = world(kExampleSource);
  int c1 = aid(w, "C1");
  int c2 = aid(w, "C2");
  auto fwd = interaction_set(w.model, w.graph, c1, c2);
  auto rev = interaction_set(w.model, w.graph, c2, c1);
  REQUIRE(fwd.size() == rev.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    CHECK(fwd[i].first == rev[i].first);
    CHECK(fwd[i].second != rev[i].second);
  }
}

TEST_CASE("interact: a member paired with its own type sees the rest of it") {
  World w = world(R"(
class Self {
  private int v;
  int grow() { v = v + 1; return v; }
  int idle() { return 0; }
}
)");
  int self = aid(w, "Self");
  int grow = aid(w, "Self#grow()");
  // grow's field accesses connect it to the remainder of the class; nothing
  // is attributed twice even though grow sits inside the type's closure.
  auto set = interaction_set(w.model, w.graph, grow, self);
  REQUIRE(set.size() == 3);  // v is read twice and written once
  for (const auto& e : set) CHECK(e.second == FlowDirection::Forward);

  auto flipped = interaction_set(w.model, w.graph, self, grow);
  REQUIRE(flipped.size() == 3);
  CHECK(flipped[0].second == FlowDirection::Backward);

  CHECK(relative_location(w.model, grow, self) == RelativeLocation::Same);
  CHECK(interaction_set(w.model, w.graph, aid(w, "Self#idle()"), self).empty());
}

TEST_CASE("interact: relative location compares declaring classes") {
  World w = world(kExampleSource);
  int c1 = aid(w, "C1");
  int c2 = aid(w, "C2");
  int m1 = aid(w, "C1#m1(C2)");
  int m2 = aid(w, "C2#m2()");
  int m3 = aid(w, "C2#m3()");
  CHECK(relative_location(w.model, m2, m3) == RelativeLocation::Same);
  CHECK(relative_location(w.model, m2, c2) == RelativeLocation::Same);
  CHECK(relative_location(w.model, m1, m2) == RelativeLocation::Different);
  CHECK(relative_location(w.model, m1, c2) == RelativeLocation::Different);
  CHECK(relative_location(w.model, c1, c2) == RelativeLocation::Different);
}

TEST_CASE("interact: label spellings round-trip") {
  CHECK(std::string(to_string(RelativeLocation::Same)) == "Same");
  CHECK(std::string(to_string(FlowDirection::Backward)) == "Backward");
  CHECK(std::string(to_string(InteractionType::CS1_nonCS2)) == "CS1-nonCS2");
  RelativeLocation loc;
  FlowDirection dir;
  InteractionType ty;
  CHECK(relative_location_from_string("Different", loc));
  CHECK(loc == RelativeLocation::Different);
  CHECK(flow_direction_from_string("Forward", dir));
  CHECK(dir == FlowDirection::Forward);
  CHECK(interaction_type_from_string("nonCS1-CS2", ty));
  CHECK(ty == InteractionType::nonCS1_CS2);
  CHECK_FALSE(relative_location_from_string("same", loc));
  CHECK_FALSE(flow_direction_from_string("", dir));
  CHECK_FALSE(interaction_type_from_string("CS1_CS2", ty));
}

TEST_CASE("interact: the ten smell pairs come in declaration order") {
  const auto& pairs = all_smell_pairs();
  REQUIRE(pairs.size() == 10);
  CHECK(pairs.front().cs1 == SmellKind::FE);
  CHECK(pairs.front().cs2 == SmellKind::BM);
  CHECK(pairs.back().cs1 == SmellKind::BC);
  CHECK(pairs.back().cs2 == SmellKind::DC);
  for (const SmellPair& p : pairs) CHECK(static_cast<int>(p.cs1) < static_cast<int>(p.cs2));
  SmellPair gcdc{SmellKind::GC, SmellKind::DC};
  CHECK(gcdc.label() == "GC-DC");
  CHECK(std::count(pairs.begin(), pairs.end(), gcdc) == 1);
}

// ---------------------------------------------------------------------------
// pair datasets

namespace {

// Tight thresholds make the small fixture classes smelly: the engine needs
// only WMC 4 and two foreign fields to be a God Class, the store only its
// two accessors to be a Data Class.
metrics::ThresholdConfig tight_class_thresholds() {
  metrics::ThresholdConfig cfg;
  cfg.few_upper = 1;
  cfg.very_high_wmc = 4;
  cfg.high_wmc = 3;
  return cfg;
}

const char* kEngineCorpus = R"(
class Store {
  private int a;
  private int b;
  int getA() { return a; }
  int getB() { return b; }
}
class Engine {
  int m0(Store s) { return s.getA() + s.getB(); }
  int m1(Scratch s) { return s.run(); }
  int m2() { return 3; }
  int m3() { return 4; }
}
class Scratch {
  int run() { return 1; }
}
class Feed {
  int peek(Store s) { return s.getA(); }
}
)";

}  // namespace

TEST_CASE("interact: a pair dataset labels smelly, baseline, and reverse-baseline pairs") {
  World w = world(kEngineCorpus, tight_class_thresholds());
  int engine = aid(w, "Engine");
  int store = aid(w, "Store");
  int scratch = aid(w, "Scratch");
  int feed = aid(w, "Feed");
  REQUIRE(w.d.is(SmellKind::GC, engine));
  REQUIRE(w.d.is(SmellKind::DC, store));
  REQUIRE_FALSE(w.d.is(SmellKind::DC, scratch));
  REQUIRE_FALSE(w.d.is(SmellKind::GC, feed));

  PairDataset ds = build_pair_dataset(w.model, w.graph, w.d,
                                      {SmellKind::GC, SmellKind::DC});
  CHECK(ds.pair.label() == "GC-DC");
  REQUIRE(ds.records.size() == 3);

  const InteractionRecord* smelly = find_record(ds, InteractionType::CS1_CS2, engine, store);
  REQUIRE(smelly != nullptr);
  CHECK(smelly->location == RelativeLocation::Different);
  REQUIRE(smelly->edges.size() == 3);  // parameter + two accessor calls
  for (const auto& e : smelly->edges) CHECK(e.second == FlowDirection::Forward);

  const InteractionRecord* baseline = find_record(ds, InteractionType::CS1_nonCS2, engine, scratch);
  REQUIRE(baseline != nullptr);
  CHECK(baseline->edges.size() == 2);

  const InteractionRecord* reverse = find_record(ds, InteractionType::nonCS1_CS2, feed, store);
  REQUIRE(reverse != nullptr);
  CHECK(reverse->edges.size() == 2);
  for (const auto& e : reverse->edges) CHECK(e.second == FlowDirection::Forward);

  // Sorted by type, then ids.
  CHECK(ds.records[0].type == InteractionType::CS1_CS2);
  CHECK(ds.records[1].type == InteractionType::CS1_nonCS2);
  CHECK(ds.records[2].type == InteractionType::nonCS1_CS2);
  CHECK(ds.project_id == "p");
}

TEST_CASE("interact: interaction frequency counts smelly partners once each") {
  World w = world(kEngineCorpus, tight_class_thresholds());
  Frequency gc_dc = interaction_frequency(w.model, w.graph, w.d, SmellKind::GC,
                                          SmellKind::DC);
  CHECK(gc_dc.interacting == 1);
  CHECK(gc_dc.total == 1);
  CHECK(gc_dc.percentage() == doctest::Approx(100.0));

  Frequency dc_gc = interaction_frequency(w.model, w.graph, w.d, SmellKind::DC,
                                          SmellKind::GC);
  CHECK(dc_gc.interacting == 1);
  CHECK(dc_gc.total == 1);

  // No Brain Classes anywhere: the frequency is undefined, not zero percent.
  Frequency none = interaction_frequency(w.model, w.graph, w.d, SmellKind::BC,
                                         SmellKind::DC);
  CHECK(none.total == 0);
  CHECK(none.interacting == 0);
  CHECK(none.percentage() == 0.0);
}

namespace {

// Loose method thresholds: a five-line method with one branch and two locals
// already counts as a Brain Method, and two foreign accessor reads as envy.
metrics::ThresholdConfig tight_method_thresholds() {
  metrics::ThresholdConfig cfg;
  cfg.few_upper = 1;
  cfg.high_method_loc = 1;
  cfg.high_cyclo_ratio = 0.01;
  cfg.several = 1;
  cfg.many = 1;
  return cfg;
}

const char* kDrainCorpus = R"(
class Pool {
  private int p0;
  private int p1;
  int getP0() { return p0; }
  int getP1() { return p1; }
}
class CX {
  int drainX(Pool p, CY other) {
    int t = p.getP0() + p.getP1();
    int u = other.drainY(p, null) + CZ.calm(t);
    if (t > 0) { t = t + 1; }
    return t + u;
  }
}
class CY {
  int drainY(Pool p, CX other) {
    int t = p.getP0() + p.getP1();
    int u = t;
    if (t > 0) { t = t + 1; }
    return t + u;
  }
}
class CZ {
  static int calm(int v) { return v; }
}
)";

}  // namespace

TEST_CASE("interact: smelly-smelly pairs outrank baselines and orient by id") {
  World w = world(kDrainCorpus, tight_method_thresholds());
  int drainX = aid(w, "CX#drainX(Pool,CY)");
  int drainY = aid(w, "CY#drainY(Pool,CX)");
  int calm = aid(w, "CZ#calm(int)");
  // Both drains carry both smells; calm carries neither.
  for (int m : {drainX, drainY}) {
    REQUIRE(w.d.is(SmellKind::FE, m));
    REQUIRE(w.d.is(SmellKind::BM, m));
  }
  REQUIRE_FALSE(w.d.is(SmellKind::FE, calm));
  REQUIRE_FALSE(w.d.is(SmellKind::BM, calm));

  PairDataset ds = build_pair_dataset(w.model, w.graph, w.d,
                                      {SmellKind::FE, SmellKind::BM});
  REQUIRE(ds.records.size() == 3);

  // drainX-drainY qualifies in both orientations; it appears once, smaller
  // id first, and never again as a baseline.
  const InteractionRecord* smelly = find_record(ds, InteractionType::CS1_CS2, drainX, drainY);
  REQUIRE(smelly != nullptr);
  REQUIRE(smelly->edges.size() == 1);
  CHECK(smelly->edges[0].second == FlowDirection::Forward);
  CHECK(smelly->location == RelativeLocation::Different);

  // drainX-calm is smelly on one side only, in both readings of the pair, so
  // it shows up once per baseline type with mirrored directions.
  const InteractionRecord* fwd = find_record(ds, InteractionType::CS1_nonCS2, drainX, calm);
  REQUIRE(fwd != nullptr);
  REQUIRE(fwd->edges.size() == 1);
  CHECK(fwd->edges[0].second == FlowDirection::Forward);

  const InteractionRecord* rev = find_record(ds, InteractionType::nonCS1_CS2, calm, drainX);
  REQUIRE(rev != nullptr);
  REQUIRE(rev->edges.size() == 1);
  CHECK(rev->edges[0].first == fwd->edges[0].first);
  CHECK(rev->edges[0].second == FlowDirection::Backward);
}

TEST_CASE("interact: a brain method inside its brain class is a Same-location pair") {
  metrics::ThresholdConfig cfg = tight_method_thresholds();
  cfg.few_upper = 5;  // keep God Class out of the way so Brain Class can fire
  cfg.very_high_wmc = 2;
  World w = world(R"(
class Pool {
  private int p0;
  private int p1;
  int getP0() { return p0; }
  int getP1() { return p1; }
}
class Den {
  int churnA(Pool p) {
    int t = p.getP0() + p.getP1();
    int u = churnB(p);
    if (t > 0) { t = t + 1; }
    return t + u;
  }
  int churnB(Pool p) {
    int t = p.getP0() + p.getP1();
    int u = t;
    if (t > 0) { t = t + 1; }
    return t + u;
  }
}
)",
                  cfg);
  int den = aid(w, "Den");
  int churnA = aid(w, "Den#churnA(Pool)");
  int churnB = aid(w, "Den#churnB(Pool)");
  int pool = aid(w, "Pool");
  REQUIRE(w.d.is(SmellKind::BC, den));
  REQUIRE(w.d.is(SmellKind::BM, churnA));
  REQUIRE(w.d.is(SmellKind::BM, churnB));

  PairDataset ds = build_pair_dataset(w.model, w.graph, w.d,
                                      {SmellKind::BM, SmellKind::BC});
  REQUIRE(ds.records.size() == 4);

  // Each method interacts with the rest of its own class.
  const InteractionRecord* a = find_record(ds, InteractionType::CS1_CS2, churnA, den);
  REQUIRE(a != nullptr);
  CHECK(a->location == RelativeLocation::Same);
  REQUIRE(a->edges.size() == 1);
  CHECK(a->edges[0].second == FlowDirection::Forward);  // churnA calls churnB

  const InteractionRecord* b = find_record(ds, InteractionType::CS1_CS2, churnB, den);
  REQUIRE(b != nullptr);
  CHECK(b->location == RelativeLocation::Same);
  REQUIRE(b->edges.size() == 1);
  CHECK(b->edges[0].second == FlowDirection::Backward);

  // Pool is no Brain Class, so the methods' traffic into it is baseline.
  const InteractionRecord* pa = find_record(ds, InteractionType::CS1_nonCS2, churnA, pool);
  REQUIRE(pa != nullptr);
  CHECK(pa->edges.size() == 3);
  CHECK(pa->location == RelativeLocation::Different);
  CHECK(find_record(ds, InteractionType::CS1_nonCS2, churnB, pool) != nullptr);
}

TEST_CASE("interact: record flags are consistent across every pair") {
  std::vector<model::SourceFile> sources{{"Example.java", kEngineCorpus},
                                         {"Pool.java", testgen::pool_source()}};
  Rng rng(88);
  for (int i = 0; i < 6; ++i) {
    std::string name = "R" + std::to_string(i);
    sources.push_back({name + ".java", testgen::random_class(rng, name)});
  }
  World w = world(sources, tight_class_thresholds());

  int total_records = 0;
  for (const SmellPair& pair : all_smell_pairs()) {
    PairDataset ds = build_pair_dataset(w.model, w.graph, w.d, pair);
    std::set<std::pair<int, int>> seen_per_type[3];
    for (const InteractionRecord& r : ds.records) {
      ++total_records;
      CHECK_FALSE(r.edges.empty());
      CHECK(w.model.at(r.a1).kind == smells::artifact_kind_of(pair.cs1));
      CHECK(w.model.at(r.a2).kind == smells::artifact_kind_of(pair.cs2));
      bool s1 = w.d.is(pair.cs1, r.a1);
      bool s2 = w.d.is(pair.cs2, r.a2);
      switch (r.type) {
        case InteractionType::CS1_CS2:
          CHECK(s1);
          CHECK(s2);
          break;
        case InteractionType::CS1_nonCS2:
          CHECK(s1);
          CHECK_FALSE(s2);
          break;
        case InteractionType::nonCS1_CS2:
          CHECK_FALSE(s1);
          CHECK(s2);
          break;
      }
      CHECK(r.location == relative_location(w.model, r.a1, r.a2));
      // Each unordered pair at most once per type.
      auto key = std::minmax(r.a1, r.a2);
      CHECK(seen_per_type[static_cast<int>(r.type)].insert(key).second);
      // Edges are the interaction set of the record's own orientation.
      CHECK(r.edges == interaction_set(w.model, w.graph, r.a1, r.a2));
    }
    // Deterministic rebuild.
    PairDataset again = build_pair_dataset(w.model, w.graph, w.d, pair);
    REQUIRE(again.records.size() == ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
      CHECK(again.records[i].type == ds.records[i].type);
      CHECK(again.records[i].a1 == ds.records[i].a1);
      CHECK(again.records[i].a2 == ds.records[i].a2);
      CHECK(again.records[i].edges == ds.records[i].edges);
    }
  }
  CHECK(total_records > 0);
}

TEST_CASE("interact: symmetry holds across a random corpus") {
  std::vector<model::SourceFile> sources{{"Pool.java", testgen::pool_source()}};
  Rng rng(31337);
  for (int i = 0; i < 8; ++i) {
    std::string name = "S" + std::to_string(i);
    sources.push_back({name + ".java", testgen::random_class(rng, name)});
  }
  World w = world(sources);
  int n = static_cast<int>(w.model.artifacts.size());
  for (int trial = 0; trial < 200; ++trial) {
    int a = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
    if (a == b) continue;
    auto fwd = interaction_set(w.model, w.graph, a, b);
    auto rev = interaction_set(w.model, w.graph, b, a);
    REQUIRE(fwd.size() == rev.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      CHECK(fwd[i].first == rev[i].first);
      CHECK(fwd[i].second != rev[i].second);
    }
  }
}
