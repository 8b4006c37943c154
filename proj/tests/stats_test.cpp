#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "smelldep/deps/dependency.hpp"
#include "smelldep/interact/interaction.hpp"
#include "smelldep/stats/stats.hpp"
#include "smelldep/support/rand.hpp"

using namespace smelldep;
using namespace smelldep::stats;
using deps::DependencyType;
using deps::Relation;
using interact::FlowDirection;
using interact::InteractionType;
using interact::RelativeLocation;
using interact::SmellPair;
using model::ArtifactKind;
using smells::SmellKind;

namespace {

using Sample = std::vector<double>;

// Independent oracle: midranks with plain doubles, U from the rank sum,
// two-sided p by enumerating every same-size regrouping directly.
std::vector<double> oracle_midranks(const Sample& pooled) {
  int n = static_cast<int>(pooled.size());
  std::vector<int> order(pooled.size());
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pooled[a] < pooled[b]; });
  std::vector<double> rank(pooled.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    double mid = 0.5 * ((i + 1) + (j + 1));
    for (int k = i; k <= j; ++k) rank[order[k]] = mid;
    i = j + 1;
  }
  return rank;
}

double oracle_min_u(const std::vector<double>& ranks, int n1, int n2) {
  double r1 = 0.0;
  for (int i = 0; i < n1; ++i) r1 += ranks[static_cast<std::size_t>(i)];
  double u1 = r1 - 0.5 * n1 * (n1 + 1);
  return std::min(u1, static_cast<double>(n1) * n2 - u1);
}

double oracle_exact_p(const Sample& x, const Sample& y) {
  int n1 = static_cast<int>(x.size());
  int n2 = static_cast<int>(y.size());
  int n = n1 + n2;
  Sample pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::vector<double> ranks = oracle_midranks(pooled);
  double t_obs = oracle_min_u(ranks, n1, n2);

  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + n1, true);
  std::sort(pick.begin(), pick.end(), std::greater<bool>());
  long long hits = 0;
  long long total = 0;
  do {
    double r1 = 0.0;
    for (int i = 0; i < n; ++i) {
      if (pick[static_cast<std::size_t>(i)]) r1 += ranks[static_cast<std::size_t>(i)];
    }
    double u1 = r1 - 0.5 * n1 * (n1 + 1);
    double t = std::min(u1, static_cast<double>(n1) * n2 - u1);
    ++total;
    if (t <= t_obs + 1e-9) ++hits;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

double oracle_delta(const Sample& x, const Sample& y) {
  long long wins = 0;
  long long losses = 0;
  for (double a : x) {
    for (double b : y) {
      if (a > b) ++wins;
      if (a < b) ++losses;
    }
  }
  return static_cast<double>(wins - losses) /
         (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

double oracle_u_greater(const Sample& x, const Sample& y) {
  double u = 0.0;
  for (double a : x) {
    for (double b : y) {
      if (a > b) u += 1.0;
      if (a == b) u += 0.5;
    }
  }
  return u;
}

Sample random_counts(Rng& rng, int n, int max_value) {
  Sample out;
  for (int i = 0; i < n; ++i) {
    out.push_back(static_cast<double>(rng.range(0, max_value)));
  }
  return out;
}

DependencyType triple(Relation r, ArtifactKind s, ArtifactKind t) {
  DependencyType d;
  d.relation = r;
  d.source_kind = s;
  d.target_kind = t;
  return d;
}

const DependencyType kCallFmFm =
    triple(Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::FunctionalMethod);
const DependencyType kUseFmField =
    triple(Relation::Use, ArtifactKind::FunctionalMethod, ArtifactKind::Field);

// A record whose interaction set holds `matching` forward (call, FM, FM)
// edges plus `padding` forward (use, FM, Field) edges.
RecordView record(InteractionType type, RelativeLocation location, int matching,
                  int padding = 0) {
  RecordView r;
  r.type = type;
  r.location = location;
  for (int i = 0; i < matching; ++i) r.edges.emplace_back(kCallFmFm, FlowDirection::Forward);
  for (int i = 0; i < padding; ++i) r.edges.emplace_back(kUseFmField, FlowDirection::Forward);
  return r;
}

DatasetView dataset(const std::string& project, SmellPair pair,
                    std::vector<RecordView> records) {
  DatasetView d;
  d.project_id = project;
  d.pair = pair;
  d.records = std::move(records);
  return d;
}

const SmellPair kGcDc{SmellKind::GC, SmellKind::DC};
const SmellPair kFeBm{SmellKind::FE, SmellKind::BM};

ContrastSpec general_spec(SmellPair pair, InteractionType baseline, RelativeLocation location) {
  ContrastSpec s;
  s.pair = pair;
  s.baseline = baseline;
  s.location = location;
  return s;
}

ContrastSpec specific_spec(SmellPair pair, InteractionType baseline, RelativeLocation location,
                           DependencyType type, FlowDirection direction) {
  ContrastSpec s = general_spec(pair, baseline, location);
  s.variable.general = false;
  s.variable.dep_type = type;
  s.variable.direction = direction;
  return s;
}

bool same_spec(const ContrastSpec& a, const ContrastSpec& b) {
  if (!(a.pair == b.pair) || a.baseline != b.baseline || a.location != b.location) return false;
  if (a.variable.general != b.variable.general) return false;
  if (a.variable.general) return true;
  return a.variable.dep_type == b.variable.dep_type && a.variable.direction == b.variable.direction;
}

const ContrastResult* find_contrast(const StudyResults& results, const ContrastSpec& spec) {
  for (const ContrastResult& c : results.contrasts) {
    if (same_spec(c.spec, spec)) return &c;
  }
  return nullptr;
}

const PerSystemSummary* find_summary(const StudyResults& results, const ContrastSpec& spec) {
  for (const PerSystemSummary& s : results.summaries) {
    if (same_spec(s.spec, spec)) return &s;
  }
  return nullptr;
}

const RejectionCount* find_rejection(const StudyResults& results, const DependencyType& type) {
  for (const RejectionCount& r : results.rejections) {
    if (r.dep_type == type) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("effect bands follow the |delta| thresholds") {
  CHECK(band_of(0.45) == EffectBand::Medium);
  CHECK(band_of(-0.18) == EffectBand::Small);
  CHECK(band_of(-0.05) == EffectBand::Negligible);
  CHECK(band_of(0.0) == EffectBand::Negligible);
  CHECK(band_of(1.0) == EffectBand::Large);
  CHECK(band_of(-1.0) == EffectBand::Large);
  // Boundaries belong to the wider band.
  CHECK(band_of(0.146) == EffectBand::Negligible);
  CHECK(band_of(0.147) == EffectBand::Small);
  CHECK(band_of(0.33) == EffectBand::Medium);
  CHECK(band_of(0.474) == EffectBand::Large);

  CHECK(std::string(to_string(EffectBand::Negligible)) == "negligible");
  CHECK(std::string(to_string(EffectBand::Small)) == "small");
  CHECK(std::string(to_string(EffectBand::Medium)) == "medium");
  CHECK(std::string(to_string(EffectBand::Large)) == "large");
}

TEST_CASE("mann_whitney_u on the worked examples") {
  MwuResult identical = mann_whitney_u({1, 2, 3}, {1, 2, 3});
  CHECK(identical.u == doctest::Approx(4.5));
  CHECK(identical.p == doctest::Approx(1.0));

  MwuResult separated = mann_whitney_u({1, 2, 3}, {4, 5, 6});
  CHECK(separated.u == doctest::Approx(0.0));
  CHECK(separated.p == doctest::Approx(0.1));  // 2 of the 20 regroupings

  MwuResult constant = mann_whitney_u({5, 5, 5}, {5, 5, 5});
  CHECK(constant.u == doctest::Approx(4.5));
  CHECK(constant.p == doctest::Approx(1.0));

  CHECK_THROWS_AS(mann_whitney_u({}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(mann_whitney_u({1.0}, {}), std::invalid_argument);
}

TEST_CASE("mann_whitney_u is symmetric in its arguments") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Sample x = random_counts(rng, static_cast<int>(rng.range(1, 7)), 5);
    Sample y = random_counts(rng, static_cast<int>(rng.range(1, 7)), 5);
    MwuResult a = mann_whitney_u(x, y);
    MwuResult b = mann_whitney_u(y, x);
    CHECK(a.u == b.u);
    CHECK(a.p == b.p);
  }
}

TEST_CASE("exact p and u match independent enumeration") {
  Rng rng(7177);
  for (int trial = 0; trial < 200; ++trial) {
    Sample x = random_counts(rng, static_cast<int>(rng.range(1, 5)), 4);
    Sample y = random_counts(rng, static_cast<int>(rng.range(1, 5)), 4);
    MwuResult got = mann_whitney_u(x, y);
    Sample pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    double u_expect = oracle_min_u(oracle_midranks(pooled), static_cast<int>(x.size()),
                                   static_cast<int>(y.size()));
    CHECK(std::fabs(got.u - u_expect) < 1e-12);
    CHECK(std::fabs(got.p - oracle_exact_p(x, y)) < 1e-12);
  }
}

TEST_CASE("large samples take the normal approximation") {
  // n1 + n2 > 16 switches paths; values frozen from an independent
  // statistics package (tie-corrected, continuity-corrected, two-sided).
  Sample x1, y1;
  for (int i = 1; i <= 10; ++i) x1.push_back(i);
  for (int i = 11; i <= 20; ++i) y1.push_back(i);
  MwuResult r1 = mann_whitney_u(x1, y1);
  CHECK(r1.u == doctest::Approx(0.0));
  CHECK(r1.p == doctest::Approx(0.000182671791).epsilon(1e-6));

  Sample x2 = {0, 0, 1, 1, 2, 2, 3, 3, 4};
  Sample y2 = {1, 2, 2, 3, 3, 4, 4, 5, 5, 6};
  MwuResult r2 = mann_whitney_u(x2, y2);
  CHECK(r2.u == doctest::Approx(19.0));
  CHECK(r2.p == doctest::Approx(0.034857087101).epsilon(1e-6));

  // Above the exact cutoff the public result is exactly the approximation.
  Rng rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    Sample x = random_counts(rng, 9, 6);
    Sample y = random_counts(rng, 9, 6);
    CHECK(mann_whitney_u(x, y).p == detail::approx_p(x, y));
  }
}

TEST_CASE("approximation stays within 0.02 of exact for balanced tie-free samples") {
  // The drift bound holds once both sides have at least 5 tie-free
  // observations (exhaustive scan over all rank arrangements); smaller or
  // tied samples can drift far more, which the acceptance suite measures.
  Rng rng(90210);
  for (int trial = 0; trial < 150; ++trial) {
    int n1 = static_cast<int>(rng.range(5, 8));
    int n2 = static_cast<int>(rng.range(5, 8));
    std::vector<std::size_t> values = sample_indices(rng, 1000, static_cast<std::size_t>(n1 + n2));
    Sample x, y;
    for (int i = 0; i < n1; ++i) x.push_back(static_cast<double>(values[i]));
    for (int i = n1; i < n1 + n2; ++i) y.push_back(static_cast<double>(values[i]));
    double exact = mann_whitney_u(x, y).p;
    CHECK(std::fabs(detail::approx_p(x, y) - exact) <= 0.02);
  }
}

TEST_CASE("cliffs_delta on the worked examples") {
  CHECK(cliffs_delta({1, 2, 3}, {4, 5, 6}) == doctest::Approx(-1.0));
  CHECK(cliffs_delta({4, 5, 6}, {1, 2, 3}) == doctest::Approx(1.0));
  CHECK(cliffs_delta({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
  CHECK(band_of(cliffs_delta({1, 2, 3}, {4, 5, 6})) == EffectBand::Large);
  CHECK_THROWS_AS(cliffs_delta({}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(cliffs_delta({1.0}, {}), std::invalid_argument);
}

TEST_CASE("cliffs_delta equals the pairwise definition and the U identity") {
  Rng rng(31444);
  for (int trial = 0; trial < 100; ++trial) {
    Sample x = random_counts(rng, static_cast<int>(rng.range(1, 9)), 6);
    Sample y = random_counts(rng, static_cast<int>(rng.range(1, 9)), 6);
    double d = cliffs_delta(x, y);
    CHECK(std::fabs(d - oracle_delta(x, y)) < 1e-12);
    // delta = 2*U_greater/(n1*n2) - 1 with half-credit for ties.
    double u_greater = oracle_u_greater(x, y);
    double identity = 2.0 * u_greater / (static_cast<double>(x.size()) * y.size()) - 1.0;
    CHECK(std::fabs(d - identity) < 1e-12);
    // Antisymmetry.
    CHECK(std::fabs(cliffs_delta(y, x) + d) < 1e-15);
  }
}

TEST_CASE("shifting one side up never lowers delta") {
  Rng rng(6060);
  for (int trial = 0; trial < 50; ++trial) {
    Sample x = random_counts(rng, static_cast<int>(rng.range(1, 8)), 6);
    Sample y = random_counts(rng, static_cast<int>(rng.range(1, 8)), 6);
    double before = cliffs_delta(x, y);
    double shift = 1.0 + rng.uniform01() * 3.0;
    Sample raised(x);
    for (double& v : raised) v += shift;
    CHECK(cliffs_delta(raised, y) >= before);
  }
}

TEST_CASE("statistics ignore input order") {
  Rng rng(808);
  Sample x = random_counts(rng, 7, 5);
  Sample y = random_counts(rng, 6, 5);
  MwuResult base = mann_whitney_u(x, y);
  double base_delta = cliffs_delta(x, y);
  Sample xs(x), ys(y);
  for (int trial = 0; trial < 10; ++trial) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[rng.bounded(i)]);
    for (std::size_t i = ys.size(); i > 1; --i) std::swap(ys[i - 1], ys[rng.bounded(i)]);
    MwuResult shuffled = mann_whitney_u(xs, ys);
    CHECK(shuffled.u == base.u);
    CHECK(shuffled.p == base.p);
    CHECK(cliffs_delta(xs, ys) == base_delta);
  }
}

TEST_CASE("variable labels name the triple and direction") {
  Variable general;
  CHECK(general.label() == "general");
  Variable specific;
  specific.general = false;
  specific.dep_type = triple(Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::Accessor);
  specific.direction = FlowDirection::Forward;
  CHECK(specific.label() == "(call, FM, Accessor) Forward");
  specific.direction = FlowDirection::Backward;
  CHECK(specific.label() == "(call, FM, Accessor) Backward");
}

TEST_CASE("all_variables is general plus every triple in both directions") {
  const std::vector<Variable>& vars = all_variables();
  REQUIRE(vars.size() == 1 + 31 * 2);
  CHECK(vars[0].general);
  CHECK_FALSE(vars[1].general);
  CHECK(vars[1].dep_type == kCallFmFm);
  CHECK(vars[1].direction == FlowDirection::Forward);
  CHECK(vars[2].dep_type == kCallFmFm);
  CHECK(vars[2].direction == FlowDirection::Backward);
  std::set<std::string> labels;
  for (std::size_t i = 1; i < vars.size(); ++i) {
    CHECK(deps::validate_triple(vars[i].dep_type));
    labels.insert(vars[i].label());
  }
  CHECK(labels.size() == 62);
}

TEST_CASE("make_view carries each edge's triple and direction") {
  deps::DependencyGraph graph;
  deps::DependencyEdge e0;
  e0.type = kCallFmFm;
  deps::DependencyEdge e1;
  e1.type = kUseFmField;
  deps::DependencyEdge e2;
  e2.type = triple(Relation::Extend, ArtifactKind::Class, ArtifactKind::Class);
  graph.edges = {e0, e1, e2};

  interact::PairDataset ds;
  ds.project_id = "demo";
  ds.pair = kGcDc;
  interact::InteractionRecord rec;
  rec.type = InteractionType::CS1_CS2;
  rec.a1 = 0;
  rec.a2 = 1;
  rec.location = RelativeLocation::Different;
  rec.edges = {{0, FlowDirection::Forward}, {2, FlowDirection::Backward}};
  ds.records.push_back(rec);

  DatasetView view = make_view(ds, graph);
  CHECK(view.project_id == "demo");
  CHECK(view.pair == kGcDc);
  REQUIRE(view.records.size() == 1);
  CHECK(view.records[0].type == InteractionType::CS1_CS2);
  CHECK(view.records[0].location == RelativeLocation::Different);
  REQUIRE(view.records[0].edges.size() == 2);
  CHECK(view.records[0].edges[0].first == kCallFmFm);
  CHECK(view.records[0].edges[0].second == FlowDirection::Forward);
  CHECK(view.records[0].edges[1].first == e2.type);
  CHECK(view.records[0].edges[1].second == FlowDirection::Backward);
}

TEST_CASE("spec_possible reflects closure kinds and locations") {
  // Two class-level smells can never share a class.
  CHECK_FALSE(spec_possible(general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Same)));
  CHECK(spec_possible(general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different)));
  // Two method-level smells can.
  CHECK(spec_possible(general_spec(kFeBm, InteractionType::CS1_nonCS2, RelativeLocation::Same)));

  // Interface-targeted triples never appear in an interaction set.
  DependencyType impl = triple(Relation::Implement, ArtifactKind::Class, ArtifactKind::Interface);
  CHECK_FALSE(spec_possible(specific_spec(kGcDc, InteractionType::CS1_nonCS2,
                                          RelativeLocation::Different, impl,
                                          FlowDirection::Forward)));
  CHECK_FALSE(spec_possible(specific_spec(kGcDc, InteractionType::CS1_nonCS2,
                                          RelativeLocation::Different, impl,
                                          FlowDirection::Backward)));

  // FE-GC puts a method on side 1 and a class closure on side 2: a
  // method-sourced triple only fits forward, a field-sourced one backward.
  SmellPair fe_gc{SmellKind::FE, SmellKind::GC};
  CHECK(spec_possible(specific_spec(fe_gc, InteractionType::CS1_nonCS2,
                                    RelativeLocation::Different, kUseFmField,
                                    FlowDirection::Forward)));
  CHECK_FALSE(spec_possible(specific_spec(fe_gc, InteractionType::CS1_nonCS2,
                                          RelativeLocation::Different, kUseFmField,
                                          FlowDirection::Backward)));
  DependencyType field_call = triple(Relation::Call, ArtifactKind::Field, ArtifactKind::FunctionalMethod);
  CHECK_FALSE(spec_possible(specific_spec(fe_gc, InteractionType::CS1_nonCS2,
                                          RelativeLocation::Different, field_call,
                                          FlowDirection::Forward)));
  CHECK(spec_possible(specific_spec(fe_gc, InteractionType::CS1_nonCS2,
                                    RelativeLocation::Different, field_call,
                                    FlowDirection::Backward)));

  // Class-class pairs accept class-to-class triples both ways.
  DependencyType extend = triple(Relation::Extend, ArtifactKind::Class, ArtifactKind::Class);
  SmellPair gc_bc{SmellKind::GC, SmellKind::BC};
  CHECK(spec_possible(specific_spec(gc_bc, InteractionType::nonCS1_CS2,
                                    RelativeLocation::Different, extend,
                                    FlowDirection::Forward)));
  CHECK(spec_possible(specific_spec(gc_bc, InteractionType::nonCS1_CS2,
                                    RelativeLocation::Different, extend,
                                    FlowDirection::Backward)));
}

TEST_CASE("run_contrast rejects malformed specs") {
  DatasetView empty = dataset("p", kGcDc, {});
  ContrastSpec bad_baseline = general_spec(kGcDc, InteractionType::CS1_CS2, RelativeLocation::Different);
  CHECK_THROWS_AS(run_contrast(empty, bad_baseline), std::invalid_argument);

  ContrastSpec bad_triple = specific_spec(
      kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
      triple(Relation::Call, ArtifactKind::Accessor, ArtifactKind::FunctionalMethod),
      FlowDirection::Forward);
  CHECK_THROWS_AS(run_contrast(empty, bad_triple), std::invalid_argument);
}

TEST_CASE("run_contrast separates, ties, and skips") {
  DatasetView ds = dataset(
      "p", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 5),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 6),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 7),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 8),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1)});

  SUBCASE("clear separation is significant with a maximal effect") {
    ContrastOutcome out =
        run_contrast(ds, general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different));
    REQUIRE(out.status == ContrastStatus::Tested);
    CHECK(out.result.n1 == 4);
    CHECK(out.result.n2 == 4);
    CHECK(out.result.u == doctest::Approx(0.0));
    CHECK(out.result.p == doctest::Approx(2.0 / 70.0));
    CHECK(out.result.significant);
    CHECK(out.result.delta == doctest::Approx(1.0));
    CHECK(out.result.band == EffectBand::Large);
    CHECK(out.result.median1 == doctest::Approx(6.5));
    CHECK(out.result.median2 == doctest::Approx(1.0));
  }

  SUBCASE("the matching specific variable sees the same separation") {
    ContrastOutcome out = run_contrast(
        ds, specific_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                          kCallFmFm, FlowDirection::Forward));
    REQUIRE(out.status == ContrastStatus::Tested);
    CHECK(out.result.delta == doctest::Approx(1.0));
    CHECK(out.result.significant);
  }

  SUBCASE("a triple absent from every record still tests, with zero vectors") {
    ContrastOutcome out = run_contrast(
        ds, specific_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                          kUseFmField, FlowDirection::Backward));
    REQUIRE(out.status == ContrastStatus::Tested);
    CHECK(out.result.delta == doctest::Approx(0.0));
    CHECK(out.result.p == doctest::Approx(1.0));
    CHECK_FALSE(out.result.significant);
    CHECK(out.result.median1 == doctest::Approx(0.0));
    CHECK(out.result.median2 == doctest::Approx(0.0));
  }

  SUBCASE("the other baseline has no records, so the contrast is absent") {
    ContrastOutcome out =
        run_contrast(ds, general_spec(kGcDc, InteractionType::nonCS1_CS2, RelativeLocation::Different));
    CHECK(out.status == ContrastStatus::Absent);
  }

  SUBCASE("no records at the requested location means absent") {
    ContrastOutcome out =
        run_contrast(ds, general_spec(kFeBm, InteractionType::CS1_nonCS2, RelativeLocation::Same));
    // Same-location FM pairs are possible in principle, just missing here.
    DatasetView fm = dataset("p", kFeBm, ds.records);
    out = run_contrast(fm, general_spec(kFeBm, InteractionType::CS1_nonCS2, RelativeLocation::Same));
    CHECK(out.status == ContrastStatus::Absent);
  }

  SUBCASE("impossibility wins over whatever the records claim") {
    DatasetView odd = dataset(
        "p", kGcDc,
        {record(InteractionType::CS1_CS2, RelativeLocation::Same, 2),
         record(InteractionType::CS1_nonCS2, RelativeLocation::Same, 1)});
    ContrastOutcome out =
        run_contrast(odd, general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Same));
    CHECK(out.status == ContrastStatus::Impossible);
  }
}

TEST_CASE("run_contrast on identical sides finds nothing") {
  DatasetView ds = dataset(
      "p", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 2),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 3),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 2),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 3)});
  ContrastOutcome out =
      run_contrast(ds, general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different));
  REQUIRE(out.status == ContrastStatus::Tested);
  CHECK(out.result.delta == doctest::Approx(0.0));
  CHECK(out.result.p == doctest::Approx(1.0));
  CHECK_FALSE(out.result.significant);
}

TEST_CASE("run_contrast counts only the requested type and direction") {
  RecordView mixed = record(InteractionType::CS1_CS2, RelativeLocation::Different, 2, 1);
  mixed.edges.emplace_back(kCallFmFm, FlowDirection::Backward);
  DatasetView ds = dataset(
      "p", kGcDc,
      {mixed, record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1)});
  ContrastOutcome out = run_contrast(
      ds, specific_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                        kCallFmFm, FlowDirection::Forward));
  REQUIRE(out.status == ContrastStatus::Tested);
  CHECK(out.result.median1 == doctest::Approx(2.0));  // backward copy not counted
  CHECK(out.result.median2 == doctest::Approx(1.0));
}

TEST_CASE("run_family_contrast sums member-triple counts per record") {
  // The record helper pads with use(FM, Field) edges, so the family value is
  // matching + padding. Splits chosen to reproduce the frozen {5,6,7,8} vs
  // {1,1,1,1} separation even though neither member alone carries it.
  DatasetView ds = dataset(
      "p", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 2, 3),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 3, 3),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 4, 3),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 4, 4),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1, 0),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 0, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1, 0),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 0, 1)});
  FamilyContrastSpec family{kGcDc,
                            InteractionType::CS1_nonCS2,
                            RelativeLocation::Different,
                            {kCallFmFm, kUseFmField},
                            FlowDirection::Forward};

  ContrastOutcome out = run_family_contrast(ds, family);
  REQUIRE(out.status == ContrastStatus::Tested);
  CHECK(out.result.p == doctest::Approx(2.0 / 70.0));
  CHECK(out.result.delta == doctest::Approx(1.0));
  CHECK(out.result.band == EffectBand::Large);
  CHECK(out.result.median1 == doctest::Approx(6.5));
  CHECK(out.result.median2 == doctest::Approx(1.0));

  SUBCASE("a backward edge does not count toward a forward family") {
    ds.records[4].edges.emplace_back(kCallFmFm, FlowDirection::Backward);
    ContrastOutcome again = run_family_contrast(ds, family);
    REQUIRE(again.status == ContrastStatus::Tested);
    CHECK(again.result.median2 == doctest::Approx(1.0));
  }

  SUBCASE("a single-member family matches the plain specific contrast") {
    family.triples = {kCallFmFm};
    ContrastOutcome grouped = run_family_contrast(ds, family);
    ContrastOutcome plain = run_contrast(
        ds, specific_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                          kCallFmFm, FlowDirection::Forward));
    REQUIRE(grouped.status == ContrastStatus::Tested);
    CHECK(grouped.result.u == plain.result.u);
    CHECK(grouped.result.p == plain.result.p);
    CHECK(grouped.result.delta == plain.result.delta);
    CHECK(grouped.result.n1 == plain.result.n1);
    CHECK(grouped.result.n2 == plain.result.n2);
  }

  SUBCASE("no baseline records at the location means Absent") {
    ds.records.resize(4);
    CHECK(run_family_contrast(ds, family).status == ContrastStatus::Absent);
  }
}

TEST_CASE("family feasibility follows the member closures") {
  const std::vector<deps::DependencyType> data_family = {
      triple(Relation::Call, ArtifactKind::FunctionalMethod, ArtifactKind::Accessor),
      triple(Relation::Use, ArtifactKind::FunctionalMethod, ArtifactKind::Field)};
  FamilyContrastSpec f{kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                       data_family, FlowDirection::Forward};

  // Class closures hold accessors and fields, so both directions work.
  CHECK(family_possible(f));
  f.direction = FlowDirection::Backward;
  CHECK(family_possible(f));

  // A method-kind pair can neither provide nor receive data-family targets:
  // Accessor and Field never sit in an FM closure.
  f.pair = kFeBm;
  f.direction = FlowDirection::Forward;
  CHECK_FALSE(family_possible(f));
  f.direction = FlowDirection::Backward;
  CHECK_FALSE(family_possible(f));
  CHECK(run_family_contrast(dataset("p", kFeBm, {}), f).status == ContrastStatus::Impossible);

  // One feasible member is enough; an all-infeasible group is Impossible.
  FamilyContrastSpec mixed{kGcDc,
                           InteractionType::CS1_nonCS2,
                           RelativeLocation::Different,
                           {triple(Relation::Implement, ArtifactKind::Class,
                                   ArtifactKind::Interface),
                            kCallFmFm},
                           FlowDirection::Forward};
  CHECK(family_possible(mixed));
  mixed.triples.resize(1);
  CHECK_FALSE(family_possible(mixed));

  // Same-location class pairs stay impossible for every group.
  FamilyContrastSpec same{kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Same,
                          data_family, FlowDirection::Forward};
  CHECK_FALSE(family_possible(same));
}

TEST_CASE("run_family_contrast rejects malformed groups") {
  DatasetView ds = dataset("p", kGcDc, {});
  FamilyContrastSpec f{kGcDc,
                       InteractionType::CS1_nonCS2,
                       RelativeLocation::Different,
                       {kCallFmFm},
                       FlowDirection::Forward};

  FamilyContrastSpec no_members = f;
  no_members.triples.clear();
  CHECK_THROWS_AS(run_family_contrast(ds, no_members), std::invalid_argument);

  FamilyContrastSpec bad_baseline = f;
  bad_baseline.baseline = InteractionType::CS1_CS2;
  CHECK_THROWS_AS(run_family_contrast(ds, bad_baseline), std::invalid_argument);

  FamilyContrastSpec bad_triple = f;
  bad_triple.triples.push_back(
      triple(Relation::Call, ArtifactKind::Class, ArtifactKind::Class));
  CHECK_THROWS_AS(run_family_contrast(ds, bad_triple), std::invalid_argument);
}

namespace {

// Three projects with GC-DC data (one clearly separated, two single-record),
// one project with FE-BM data only.
StudyInput study_fixture() {
  StudyInput input;
  input.datasets.push_back(dataset(
      "alpha", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 5),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 6),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 7),
       record(InteractionType::CS1_CS2, RelativeLocation::Different, 8),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1)}));
  input.datasets.push_back(dataset(
      "beta", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 3),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 1)}));
  input.datasets.push_back(dataset(
      "gamma", kGcDc,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 1),
       record(InteractionType::CS1_nonCS2, RelativeLocation::Different, 3)}));
  input.datasets.push_back(dataset(
      "delta", kFeBm,
      {record(InteractionType::CS1_CS2, RelativeLocation::Different, 2),
       record(InteractionType::nonCS1_CS2, RelativeLocation::Different, 1)}));
  return input;
}

}  // namespace

TEST_CASE("run_study per-system aggregates project verdicts") {
  StudyResults results = run_study(study_fixture(), Perspective::PerSystem);
  CHECK(results.perspective == Perspective::PerSystem);
  CHECK(results.contrasts.empty());
  CHECK(results.summaries.size() == 10 * 2 * 2 * 63);
  CHECK(results.project_contrasts.size() == 4 * results.summaries.size());

  // GC-DC at Different vs CS1-nonCS2: alpha significant with delta 1,
  // beta delta 1 (n too small to reject), gamma delta -1, delta-project absent.
  const PerSystemSummary* s =
      find_summary(results, general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different));
  REQUIRE(s != nullptr);
  CHECK(s->included_projects == 3);
  CHECK(s->significance_rate == doctest::Approx(1.0 / 3.0));
  CHECK(s->consistency_score == doctest::Approx((2.0 - 1.0) / 3.0));

  // FE-BM vs nonCS1-CS2 is only testable in the delta project.
  const PerSystemSummary* f =
      find_summary(results, general_spec(kFeBm, InteractionType::nonCS1_CS2, RelativeLocation::Different));
  REQUIRE(f != nullptr);
  CHECK(f->included_projects == 1);
  CHECK(f->significance_rate == doctest::Approx(0.0));
  CHECK(f->consistency_score == doctest::Approx(1.0));

  // Nothing was testable for an untouched pair.
  SmellPair fe_dc{SmellKind::FE, SmellKind::DC};
  const PerSystemSummary* untouched =
      find_summary(results, general_spec(fe_dc, InteractionType::CS1_nonCS2, RelativeLocation::Different));
  REQUIRE(untouched != nullptr);
  CHECK(untouched->included_projects == 0);
  CHECK(untouched->significance_rate == doctest::Approx(0.0));
  CHECK(untouched->consistency_score == doctest::Approx(0.0));

  // GC-DC Different allows 61 variables (the two implement directions are
  // impossible); three projects have data there. FE-BM allows only the
  // (call, FM, FM) pair of directions plus general, in one project.
  CHECK(results.tests_run == 3 * 61 + 1 * 3);

  // alpha's separated triple is the one significant non-negligible test.
  const RejectionCount* r = find_rejection(results, kCallFmFm);
  REQUIRE(r != nullptr);
  CHECK(r->rejecting == 1);
  CHECK(r->rejecting_excluding_negligible == 1);
  CHECK(results.rejections.size() == 31);
  for (const RejectionCount& other : results.rejections) {
    if (other.dep_type == kCallFmFm) continue;
    CHECK(other.rejecting == 0);
    CHECK(other.rejecting_excluding_negligible == 0);
  }
}

TEST_CASE("run_study union pools records across projects") {
  StudyResults results = run_study(study_fixture(), Perspective::Union);
  CHECK(results.perspective == Perspective::Union);
  CHECK(results.summaries.empty());
  CHECK(results.project_contrasts.empty());
  CHECK(results.contrasts.size() == 10 * 2 * 2 * 63);
  CHECK(results.tests_run == 61 + 3);

  // Pooling equals a direct contrast over the concatenated records.
  StudyInput input = study_fixture();
  DatasetView merged = dataset("union", kGcDc, {});
  for (const DatasetView& d : input.datasets) {
    if (d.pair == kGcDc) {
      merged.records.insert(merged.records.end(), d.records.begin(), d.records.end());
    }
  }
  ContrastSpec spec = general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different);
  ContrastOutcome direct = run_contrast(merged, spec);
  const ContrastResult* pooled = find_contrast(results, spec);
  REQUIRE(pooled != nullptr);
  REQUIRE(pooled->outcome.status == ContrastStatus::Tested);
  CHECK(pooled->outcome.result.n1 == 6);
  CHECK(pooled->outcome.result.n2 == 6);
  CHECK(pooled->outcome.result.u == direct.result.u);
  CHECK(pooled->outcome.result.p == direct.result.p);
  CHECK(pooled->outcome.result.delta == direct.result.delta);

  // The rejection table agrees with a scan over the emitted contrasts.
  std::map<DependencyType, std::pair<int, int>> expected;
  for (const ContrastResult& c : results.contrasts) {
    if (c.spec.variable.general || c.outcome.status != ContrastStatus::Tested) continue;
    if (!c.outcome.result.significant) continue;
    auto& slot = expected[c.spec.variable.dep_type];
    ++slot.first;
    if (c.outcome.result.band != EffectBand::Negligible) ++slot.second;
  }
  for (const RejectionCount& r : results.rejections) {
    auto it = expected.find(r.dep_type);
    int want_all = it == expected.end() ? 0 : it->second.first;
    int want_strict = it == expected.end() ? 0 : it->second.second;
    CHECK(r.rejecting == want_all);
    CHECK(r.rejecting_excluding_negligible == want_strict);
  }
}

TEST_CASE("study results ignore dataset order") {
  StudyInput forward = study_fixture();
  StudyInput reversed;
  reversed.datasets.assign(forward.datasets.rbegin(), forward.datasets.rend());

  StudyResults a = run_study(forward, Perspective::PerSystem);
  StudyResults b = run_study(reversed, Perspective::PerSystem);
  CHECK(a.tests_run == b.tests_run);
  ContrastSpec spec = general_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different);
  const PerSystemSummary* sa = find_summary(a, spec);
  const PerSystemSummary* sb = find_summary(b, spec);
  REQUIRE(sa != nullptr);
  REQUIRE(sb != nullptr);
  CHECK(sa->included_projects == sb->included_projects);
  CHECK(sa->significance_rate == sb->significance_rate);
  CHECK(sa->consistency_score == sb->consistency_score);

  StudyResults ua = run_study(forward, Perspective::Union);
  StudyResults ub = run_study(reversed, Perspective::Union);
  const ContrastResult* ca = find_contrast(ua, spec);
  const ContrastResult* cb = find_contrast(ub, spec);
  REQUIRE(ca != nullptr);
  REQUIRE(cb != nullptr);
  CHECK(ca->outcome.result.p == cb->outcome.result.p);
  CHECK(ca->outcome.result.delta == cb->outcome.result.delta);
}

TEST_CASE("a small shift can reject with a negligible effect") {
  // 110-vs-90 ones against 90-vs-110 ones: p just under 0.05, delta 0.1.
  std::vector<RecordView> records;
  for (int i = 0; i < 200; ++i) {
    records.push_back(
        record(InteractionType::CS1_CS2, RelativeLocation::Different, i < 110 ? 1 : 0));
  }
  for (int i = 0; i < 200; ++i) {
    records.push_back(
        record(InteractionType::CS1_nonCS2, RelativeLocation::Different, i < 90 ? 1 : 0));
  }
  StudyInput input;
  input.datasets.push_back(dataset("p", kGcDc, std::move(records)));
  StudyResults results = run_study(input, Perspective::Union);

  const ContrastResult* c = find_contrast(
      results, specific_spec(kGcDc, InteractionType::CS1_nonCS2, RelativeLocation::Different,
                             kCallFmFm, FlowDirection::Forward));
  REQUIRE(c != nullptr);
  REQUIRE(c->outcome.status == ContrastStatus::Tested);
  CHECK(c->outcome.result.p == doctest::Approx(0.045825285003).epsilon(1e-6));
  CHECK(c->outcome.result.significant);
  CHECK(c->outcome.result.delta == doctest::Approx(0.1));
  CHECK(c->outcome.result.band == EffectBand::Negligible);

  const RejectionCount* r = find_rejection(results, kCallFmFm);
  REQUIRE(r != nullptr);
  CHECK(r->rejecting == 1);
  CHECK(r->rejecting_excluding_negligible == 0);
}

TEST_CASE("sample_size reproduces the published counts") {
  CHECK(sample_size(737) == 86);
  CHECK(sample_size(2348) == 93);
  CHECK(sample_size(3093) == 94);
  CHECK(sample_size(3540) == 94);
  CHECK(sample_size(5260) == 95);
  CHECK(sample_size(1) == 1);
  CHECK(sample_size(1000000000000LL) == 97);  // ceil(96.04) in the limit
  CHECK(sample_size(1000000000000LL, 0.05) == 385);
  CHECK_THROWS_AS(sample_size(0), std::invalid_argument);
  CHECK_THROWS_AS(sample_size(-5), std::invalid_argument);
  for (long long n : {1LL, 2LL, 10LL, 96LL, 97LL, 500LL}) {
    CHECK(sample_size(n) <= n);
  }
}

TEST_CASE("stratified_sample allocates proportionally") {
  std::map<std::string, int> even{{"A", 50}, {"B", 50}};
  auto sampled = stratified_sample(even, 10, 1);
  CHECK(sampled["A"].size() == 5);
  CHECK(sampled["B"].size() == 5);

  std::map<std::string, int> skewed{{"A", 90}, {"B", 10}};
  sampled = stratified_sample(skewed, 10, 1);
  CHECK(sampled["A"].size() == 9);
  CHECK(sampled["B"].size() == 1);

  std::map<std::string, int> lone{{"A", 7}};
  sampled = stratified_sample(lone, 7, 99);
  REQUIRE(sampled["A"].size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(sampled["A"][static_cast<std::size_t>(i)] == i);

  // Equal remainders fall back to name order.
  std::map<std::string, int> tied{{"A", 1}, {"B", 1}, {"C", 1}};
  sampled = stratified_sample(tied, 2, 5);
  CHECK(sampled["A"].size() == 1);
  CHECK(sampled["B"].size() == 1);
  CHECK(sampled["C"].empty());

  std::map<std::string, int> mixed{{"A", 3}, {"B", 3}, {"C", 4}};
  sampled = stratified_sample(mixed, 5, 5);
  CHECK(sampled["A"].size() == 2);
  CHECK(sampled["B"].size() == 1);
  CHECK(sampled["C"].size() == 2);

  CHECK_THROWS_AS(stratified_sample(lone, 8, 1), std::invalid_argument);
}

TEST_CASE("stratified_sample draws valid deterministic ids") {
  std::map<std::string, int> counts{{"core", 120}, {"ui", 45}, {"util", 9}};
  auto first = stratified_sample(counts, 40, 31337);
  auto second = stratified_sample(counts, 40, 31337);
  CHECK(first == second);

  std::size_t total = 0;
  for (const auto& [project, ids] : first) {
    total += ids.size();
    int limit = counts.at(project);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      CHECK(ids[i] >= 0);
      CHECK(ids[i] < limit);
      if (i > 0) CHECK(ids[i] > ids[i - 1]);  // sorted, distinct
    }
  }
  CHECK(total == 40);

  // A different seed reaches a different draw somewhere in a 120-stratum.
  auto other = stratified_sample(counts, 40, 424242);
  CHECK(first != other);
}

TEST_CASE("status and perspective names") {
  CHECK(std::string(to_string(ContrastStatus::Tested)) == "tested");
  CHECK(std::string(to_string(ContrastStatus::Impossible)) == "impossible");
  CHECK(std::string(to_string(ContrastStatus::Absent)) == "absent");
  CHECK(std::string(to_string(Perspective::Union)) == "union");
  CHECK(std::string(to_string(Perspective::PerSystem)) == "per-system");
}
