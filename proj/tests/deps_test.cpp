#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fixture_gen.hpp"
#include "smelldep/deps/dependency.hpp"
#include "smelldep/model/code_model.hpp"
#include "smelldep/model/resolve.hpp"
#include "smelldep/support/rand.hpp"

using namespace smelldep;
using namespace smelldep::deps;
using model::ArtifactKind;

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

struct Extracted {
  model::CodeModel model;
  std::vector<model::BodyFacts> facts;
  DependencyGraph graph;
};

Extracted extract(const std::vector<model::SourceFile>& sources) {
  Extracted e;
  e.model = model::build_code_model("p", sources);
  REQUIRE(e.model.diagnostics.items.empty());
  Diagnostics diags;
  e.facts = model::collect_body_facts(e.model, diags);
  e.graph = extract_dependencies(e.model, e.facts);
  return e;
}

Extracted extract(const std::string& source) {
  return extract(std::vector<model::SourceFile>{{"Example.java", source}});
}

int aid(const Extracted& e, const std::string& id) {
  int idx = e.model.find(id);
  REQUIRE(idx >= 0);
  return idx;
}

bool edge_is(const DependencyEdge& e, Relation r, ArtifactKind sk, ArtifactKind tk, int src,
             int tgt) {
  return e.type.relation == r && e.type.source_kind == sk && e.type.target_kind == tk &&
         e.source == src && e.target == tgt;
}

int count_edges(const DependencyGraph& g, Relation r, int src, int tgt) {
  return static_cast<int>(std::count_if(g.edges.begin(), g.edges.end(), [&](const DependencyEdge& e) {
    return e.type.relation == r && e.source == src && e.target == tgt;
  }));
}

}  // namespace

// ---------------------------------------------------------------------------
// triple table

TEST_CASE("deps: the valid triple table has exactly the 31 documented rows") {
  using K = ArtifactKind;
  auto add = [](std::set<DependencyType>& out, Relation r, std::vector<K> sources,
                std::vector<K> targets) {
    for (K s : sources)
      for (K t : targets) out.insert({r, s, t});
  };
  std::set<DependencyType> expected;
  add(expected, Relation::Call, {K::FunctionalMethod, K::Constructor, K::Field},
      {K::FunctionalMethod, K::Accessor, K::Constructor});
  add(expected, Relation::Create, {K::FunctionalMethod, K::Constructor, K::Field}, {K::Class});
  add(expected, Relation::Contain, {K::FunctionalMethod, K::Constructor, K::Field}, {K::Class});
  add(expected, Relation::Cast, {K::FunctionalMethod, K::Constructor, K::Field}, {K::Class});
  add(expected, Relation::Use, {K::FunctionalMethod, K::Accessor, K::Constructor, K::Field},
      {K::Field});
  add(expected, Relation::Throws, {K::FunctionalMethod, K::Constructor}, {K::Class});
  add(expected, Relation::Return, {K::FunctionalMethod, K::Accessor}, {K::Class});
  add(expected, Relation::Parameter, {K::FunctionalMethod, K::Accessor, K::Constructor},
      {K::Class});
  add(expected, Relation::Extend, {K::Class}, {K::Class});
  add(expected, Relation::Implement, {K::Class}, {K::Interface});
  REQUIRE(expected.size() == 31);

  const std::vector<DependencyType>& table = all_valid_triples();
  CHECK(table.size() == 31);
  CHECK(std::set<DependencyType>(table.begin(), table.end()) == expected);
  for (const DependencyType& t : expected) CHECK(validate_triple(t));

  // A sample of rows the table must not contain.
  CHECK_FALSE(validate_triple({Relation::Call, K::Accessor, K::FunctionalMethod}));
  CHECK_FALSE(validate_triple({Relation::Call, K::FunctionalMethod, K::Field}));
  CHECK_FALSE(validate_triple({Relation::Use, K::FunctionalMethod, K::Class}));
  CHECK_FALSE(validate_triple({Relation::Create, K::FunctionalMethod, K::Interface}));
  CHECK_FALSE(validate_triple({Relation::Parameter, K::FunctionalMethod, K::Interface}));
  CHECK_FALSE(validate_triple({Relation::Extend, K::Interface, K::Interface}));
  CHECK_FALSE(validate_triple({Relation::Implement, K::Interface, K::Interface}));
  CHECK_FALSE(validate_triple({Relation::Use, K::Class, K::Field}));
}

TEST_CASE("deps: relation and kind spellings") {
  CHECK(std::string(to_string(Relation::Call)) == "call");
  CHECK(std::string(to_string(Relation::Implement)) == "implement");
  for (int i = 0; i < kRelationCount; ++i) {
    Relation r = static_cast<Relation>(i);
    Relation back;
    REQUIRE(relation_from_string(to_string(r), back));
    CHECK(back == r);
  }
  Relation out;
  CHECK_FALSE(relation_from_string("CALL", out));
  CHECK_FALSE(relation_from_string("", out));

  DependencyType t{Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::Accessor};
  CHECK(t.label() == "(call, FM, Accessor)");
  CHECK(std::string(short_kind(ArtifactKind::Constructor)) == "Constructor");
  CHECK(std::string(short_kind(ArtifactKind::Interface)) == "Interface");
}

// ---------------------------------------------------------------------------
// the running example

TEST_CASE("deps: the two-class example yields exactly its four edges, in order") {
  Extracted e = extract(kExampleSource);
  int c1 = aid(e, "C1");
  int c2 = aid(e, "C2");
  int m1 = aid(e, "C1#m1(C2)");
  int m2 = aid(e, "C2#m2()");
  int m3 = aid(e, "C2#m3()");

  using K = ArtifactKind;
  REQUIRE(e.graph.edges.size() == 4);
  // m1's signature precedes its body; m3's edges follow in walk order (the
  // receiver creation is resolved before the chained call).
  CHECK(edge_is(e.graph.edges[0], Relation::Parameter, K::FunctionalMethod, K::Class, m1, c2));
  CHECK(edge_is(e.graph.edges[1], Relation::Call, K::FunctionalMethod, K::FunctionalMethod, m1, m2));
  CHECK(edge_is(e.graph.edges[2], Relation::Create, K::FunctionalMethod, K::Class, m3, c1));
  CHECK(edge_is(e.graph.edges[3], Relation::Call, K::FunctionalMethod, K::FunctionalMethod, m3, m1));
  for (const DependencyEdge& edge : e.graph.edges) {
    CHECK(edge.line > 0);
    CHECK(validate_triple(edge.type));
  }
  CHECK(e.graph.edges[0].type.label() == "(parameter, FM, Class)");
}

// ---------------------------------------------------------------------------
// per-relation fixtures

TEST_CASE("deps: constructor sources contain, create, call, and throws edges") {
  Extracted e = extract(R"(
class Helper {
  Helper(int n) {}
}
class MyError {
}
class W {
  W(int x) throws MyError {
    Helper h = new Helper(x);
    if (x < 0) throw new MyError();
  }
}
)");
  int w = aid(e, "W#<init>(int)");
  int helper = aid(e, "Helper");
  int helperCtor = aid(e, "Helper#<init>(int)");
  int err = aid(e, "MyError");

  CHECK(count_edges(e.graph, Relation::Contain, w, helper) == 1);
  CHECK(count_edges(e.graph, Relation::Create, w, helper) == 1);
  CHECK(count_edges(e.graph, Relation::Call, w, helperCtor) == 1);
  CHECK(count_edges(e.graph, Relation::Create, w, err) == 1);
  // The clause and the body throw are distinct sites, one edge each.
  CHECK(count_edges(e.graph, Relation::Throws, w, err) == 2);
  CHECK(e.graph.edges.size() == 6);
  // The clause edge comes with the signature, ahead of everything the body does.
  auto first_throws = std::find_if(e.graph.edges.begin(), e.graph.edges.end(),
                                   [&](const DependencyEdge& d) {
                                     return d.type.relation == Relation::Throws;
                                   });
  REQUIRE(first_throws != e.graph.edges.end());
  CHECK(first_throws == e.graph.edges.begin());
}

TEST_CASE("deps: a method throws edge counts clause and body sites separately") {
  Extracted e = extract(R"(
class AppError {
}
class T {
  void risky() throws AppError { throw new AppError(); }
}
)");
  int risky = aid(e, "T#risky()");
  int err = aid(e, "AppError");
  CHECK(count_edges(e.graph, Relation::Throws, risky, err) == 2);
  CHECK(count_edges(e.graph, Relation::Create, risky, err) == 1);
  CHECK(e.graph.edges.size() == 3);
}

TEST_CASE("deps: a class without references contributes nothing") {
  Extracted e = extract(R"(
class Island {
  void idle() {
    int x = 1;
    x = x + 1;
  }
}
)");
  CHECK(e.graph.edges.empty());
  CHECK(e.graph.by_class[aid(e, "Island")].empty());
}

TEST_CASE("deps: repeated statements keep their multiplicity") {
  Extracted e = extract(R"(
class A {
  void go(B b) {
    b.ping();
    b.ping();
  }
}
class B {
  void ping() {}
}
)");
  int go = aid(e, "A#go(B)");
  CHECK(count_edges(e.graph, Relation::Call, go, aid(e, "B#ping()")) == 2);
  CHECK(count_edges(e.graph, Relation::Parameter, go, aid(e, "B")) == 1);
  CHECK(e.graph.edges.size() == 3);
}

TEST_CASE("deps: creation calls the constructor only when one is declared") {
  Extracted e = extract(R"(
class Plain {
}
class Built {
  Built(int n) {}
}
class F {
  void a() { new Plain(); }
  void b() { new Built(1); }
}
)");
  int a = aid(e, "F#a()");
  int b = aid(e, "F#b()");
  CHECK(count_edges(e.graph, Relation::Create, a, aid(e, "Plain")) == 1);
  CHECK(e.graph.by_source[a].size() == 1);
  CHECK(count_edges(e.graph, Relation::Create, b, aid(e, "Built")) == 1);
  CHECK(count_edges(e.graph, Relation::Call, b, aid(e, "Built#<init>(int)")) == 1);
  CHECK(e.graph.by_source[b].size() == 2);
}

TEST_CASE("deps: accessor-mediated access is a call, direct access a use") {
  Extracted e = extract(R"(
class Holder {
  private int size;
  int getSize() { return size; }
}
class Reader {
  int probe(Holder h) { return h.getSize(); }
}
)");
  int probe = aid(e, "Reader#probe(Holder)");
  int getter = aid(e, "Holder#getSize()");
  REQUIRE(e.model.at(getter).kind == ArtifactKind::Accessor);

  CHECK(count_edges(e.graph, Relation::Call, probe, getter) == 1);
  CHECK(count_edges(e.graph, Relation::Parameter, probe, aid(e, "Holder")) == 1);
  CHECK(e.graph.by_source[probe].size() == 2);
  // The getter itself reads its backing field directly.
  CHECK(count_edges(e.graph, Relation::Use, getter, aid(e, "Holder#size")) == 1);
}

TEST_CASE("deps: accessors source only use, return, and parameter edges") {
  Extracted e = extract(R"(
class Tag {
}
class Box {
  private Tag tag;
  private int n;
  Tag getTag() { return tag; }
  void setTag(Tag value) { tag = value; }
  int getN() { return n; }
}
)");
  int getTag = aid(e, "Box#getTag()");
  int setTag = aid(e, "Box#setTag(Tag)");
  int getN = aid(e, "Box#getN()");
  int tagField = aid(e, "Box#tag");
  int tagClass = aid(e, "Tag");
  REQUIRE(e.model.at(getTag).kind == ArtifactKind::Accessor);
  REQUIRE(e.model.at(setTag).kind == ArtifactKind::Accessor);
  REQUIRE(e.model.at(getN).kind == ArtifactKind::Accessor);

  CHECK(count_edges(e.graph, Relation::Return, getTag, tagClass) == 1);
  CHECK(count_edges(e.graph, Relation::Use, getTag, tagField) == 1);
  CHECK(count_edges(e.graph, Relation::Parameter, setTag, tagClass) == 1);
  CHECK(count_edges(e.graph, Relation::Use, setTag, tagField) == 1);
  CHECK(count_edges(e.graph, Relation::Use, getN, aid(e, "Box#n")) == 1);
  // The field declaration itself contains its class type.
  CHECK(count_edges(e.graph, Relation::Contain, tagField, tagClass) == 1);
  CHECK(e.graph.edges.size() == 6);
  for (const DependencyEdge& d : e.graph.edges) {
    if (e.model.at(d.source).kind == ArtifactKind::Accessor) {
      bool allowed = d.type.relation == Relation::Use || d.type.relation == Relation::Return ||
                     d.type.relation == Relation::Parameter;
      CHECK(allowed);
    }
  }
}

TEST_CASE("deps: field initializers and enum constants source edges") {
  Extracted e = extract(R"(
class Seed {
  Seed(int v) {}
}
class G {
  Seed first = new Seed(1);
  int k = 3;
}
enum Mode {
  ON(1), OFF(2);
  private final int level;
  Mode(int level) { this.level = level; }
}
)");
  int first = aid(e, "G#first");
  int on = aid(e, "Mode#ON");
  int off = aid(e, "Mode#OFF");
  int mode = aid(e, "Mode");
  int modeCtor = aid(e, "Mode#<init>(int)");

  CHECK(count_edges(e.graph, Relation::Contain, first, aid(e, "Seed")) == 1);
  CHECK(count_edges(e.graph, Relation::Create, first, aid(e, "Seed")) == 1);
  CHECK(count_edges(e.graph, Relation::Call, first, aid(e, "Seed#<init>(int)")) == 1);
  CHECK(e.graph.by_source[first].size() == 3);
  CHECK(e.graph.by_source[aid(e, "G#k")].empty());

  // Constants contain their enum and call its constructor, but create nothing:
  // the set of instances is the enum's own business.
  CHECK(count_edges(e.graph, Relation::Contain, on, mode) == 1);
  CHECK(count_edges(e.graph, Relation::Call, on, modeCtor) == 1);
  CHECK(e.graph.by_source[on].size() == 2);
  CHECK(e.graph.by_source[off].size() == 2);
  for (int idx : e.graph.by_source[on]) CHECK(e.graph.edges[idx].type.relation != Relation::Create);
  // The enum constructor writes its own field.
  CHECK(count_edges(e.graph, Relation::Use, modeCtor, aid(e, "Mode#level")) == 1);
}

TEST_CASE("deps: interface-typed references are not edges") {
  Extracted e = extract(R"(
interface Port {
  void ping();
}
class U {
  void a(Port p) {}
  void b() { Port q = null; }
  Port c() { return null; }
  void d(Object o) { Port p = (Port) o; }
}
)");
  int port = aid(e, "Port");
  CHECK(e.model.at(port).kind == ArtifactKind::Interface);
  for (const DependencyEdge& d : e.graph.edges) CHECK(d.target != port);
  // Here every reference was interface-typed, so nothing at all survives.
  CHECK(e.graph.edges.empty());
}

TEST_CASE("deps: extend and implement edges follow declarations") {
  Extracted e = extract(R"(
class Base {
}
class Derived extends Base {
}
interface Port {
}
interface Wide extends Port {
}
class Impl extends Derived implements Port, Wide {
}
)");
  int base = aid(e, "Base");
  int derived = aid(e, "Derived");
  int port = aid(e, "Port");
  int wide = aid(e, "Wide");
  int impl = aid(e, "Impl");

  using K = ArtifactKind;
  REQUIRE(e.graph.edges.size() == 4);
  CHECK(edge_is(e.graph.edges[0], Relation::Extend, K::Class, K::Class, derived, base));
  CHECK(edge_is(e.graph.edges[1], Relation::Extend, K::Class, K::Class, impl, derived));
  CHECK(edge_is(e.graph.edges[2], Relation::Implement, K::Class, K::Interface, impl, port));
  CHECK(edge_is(e.graph.edges[3], Relation::Implement, K::Class, K::Interface, impl, wide));
  // An interface extending an interface matches no row of the table.
  CHECK(e.graph.by_source[wide].empty());
}

TEST_CASE("deps: recursion is not a dependency") {
  Extracted e = extract(R"(
class R {
  int fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }
}
)");
  CHECK(e.graph.edges.empty());
}

TEST_CASE("deps: array types unwrap to their element class") {
  Extracted e = extract(R"(
class Cell {
}
class ArrayUser {
  Cell[] pick(Cell[][] seed) {
    Cell[] row = seed[0];
    return row;
  }
}
)");
  int pick = aid(e, "ArrayUser#pick(Cell[][])");
  int cell = aid(e, "Cell");
  using K = ArtifactKind;
  REQUIRE(e.graph.edges.size() == 3);
  CHECK(edge_is(e.graph.edges[0], Relation::Parameter, K::FunctionalMethod, K::Class, pick, cell));
  CHECK(edge_is(e.graph.edges[1], Relation::Return, K::FunctionalMethod, K::Class, pick, cell));
  CHECK(edge_is(e.graph.edges[2], Relation::Contain, K::FunctionalMethod, K::Class, pick, cell));
}

// ---------------------------------------------------------------------------
// graph indexes and determinism

TEST_CASE("deps: indexes agree with a linear scan") {
  std::vector<model::SourceFile> sources{{"Pool.java", testgen::pool_source()}};
  Rng rng(411);
  for (int i = 0; i < 12; ++i) {
    std::string name = "W" + std::to_string(i);
    sources.push_back({name + ".java", testgen::random_class(rng, name)});
  }
  Extracted e = extract(sources);
  REQUIRE(!e.graph.edges.empty());

  int n = static_cast<int>(e.model.artifacts.size());
  REQUIRE(static_cast<int>(e.graph.by_source.size()) == n);
  REQUIRE(static_cast<int>(e.graph.by_target.size()) == n);
  REQUIRE(static_cast<int>(e.graph.by_class.size()) == n);

  for (int a = 0; a < n; ++a) {
    std::vector<int> src, tgt, cls;
    for (int i = 0; i < static_cast<int>(e.graph.edges.size()); ++i) {
      const DependencyEdge& d = e.graph.edges[i];
      if (d.source == a) src.push_back(i);
      if (d.target == a) tgt.push_back(i);
      if (e.model.class_of(d.source) == a || e.model.class_of(d.target) == a) cls.push_back(i);
    }
    CHECK(e.graph.by_source[a] == src);
    CHECK(e.graph.by_target[a] == tgt);
    CHECK(e.graph.by_class[a] == cls);
  }
}

TEST_CASE("deps: every emitted edge satisfies the triple table") {
  std::vector<model::SourceFile> sources{{"Pool.java", testgen::pool_source()}};
  Rng rng(909);
  for (int i = 0; i < 10; ++i) {
    std::string name = "V" + std::to_string(i);
    sources.push_back({name + ".java", testgen::random_class(rng, name)});
  }
  Extracted e = extract(sources);
  for (const DependencyEdge& d : e.graph.edges) {
    CHECK(validate_triple(d.type));
    CHECK(d.source != d.target);
    CHECK(e.model.at(d.source).kind == d.type.source_kind);
    CHECK(e.model.at(d.target).kind == d.type.target_kind);
  }
}

TEST_CASE("deps: extraction is deterministic") {
  std::vector<model::SourceFile> sources{{"Pool.java", testgen::pool_source()}};
  Rng rng(5150);
  for (int i = 0; i < 8; ++i) {
    std::string name = "D" + std::to_string(i);
    sources.push_back({name + ".java", testgen::random_class(rng, name)});
  }
  Extracted a = extract(sources);
  Extracted b = extract(sources);
  REQUIRE(a.graph.edges.size() == b.graph.edges.size());
  for (std::size_t i = 0; i < a.graph.edges.size(); ++i) {
    const DependencyEdge& x = a.graph.edges[i];
    const DependencyEdge& y = b.graph.edges[i];
    CHECK(x.type == y.type);
    CHECK(x.source == y.source);
    CHECK(x.target == y.target);
    CHECK(x.line == y.line);
    CHECK(x.col == y.col);
  }
  CHECK(a.graph.by_class == b.graph.by_class);
}
