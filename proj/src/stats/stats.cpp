#include "smelldep/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "smelldep/support/rand.hpp"

namespace smelldep::stats {

using deps::DependencyType;
using interact::FlowDirection;
using interact::InteractionType;
using interact::RelativeLocation;
using interact::SmellPair;
using model::ArtifactKind;

const char* to_string(EffectBand band) {
  switch (band) {
    case EffectBand::Negligible: return "negligible";
    case EffectBand::Small: return "small";
    case EffectBand::Medium: return "medium";
    case EffectBand::Large: return "large";
  }
  return "?";
}

EffectBand band_of(double delta) {
  double a = std::fabs(delta);
  if (a < 0.147) return EffectBand::Negligible;
  if (a < 0.33) return EffectBand::Small;
  if (a < 0.474) return EffectBand::Medium;
  return EffectBand::Large;
}

const char* to_string(ContrastStatus status) {
  switch (status) {
    case ContrastStatus::Tested: return "tested";
    case ContrastStatus::Impossible: return "impossible";
    case ContrastStatus::Absent: return "absent";
  }
  return "?";
}

const char* to_string(Perspective perspective) {
  return perspective == Perspective::Union ? "union" : "per-system";
}

// ---------------------------------------------------------------------------
// Mann-Whitney U

namespace {

// Doubled midranks of the pooled samples, in sample order (x then y).
// Doubling keeps every midrank integral, ties or not.
std::vector<long long> doubled_midranks(const std::vector<double>& pooled) {
  int n = static_cast<int>(pooled.size());
  std::vector<int> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pooled[a] < pooled[b]; });
  std::vector<long long> out(pooled.size());
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    long long doubled = (i + 1) + (j + 1);  // first 1-based rank + last
    for (int k = i; k <= j; ++k) out[order[k]] = doubled;
    i = j + 1;
  }
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Exact two-sided p: the share of equally sized regroupings whose
// min(U1, U2) is at most the observed one. Symmetric in the two roles and
// well defined under ties.
double exact_two_sided_p(const std::vector<long long>& dranks, int n1, long long doubled_min_u) {
  int n = static_cast<int>(dranks.size());
  long long count = 0;
  long long total = 0;
  const long long full = 2LL * n1 * (n - n1);
  std::vector<int> pick(static_cast<std::size_t>(n1));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    long long dr1 = 0;
    for (int idx : pick) dr1 += dranks[static_cast<std::size_t>(idx)];
    long long du1 = dr1 - static_cast<long long>(n1) * (n1 + 1);
    long long dmin = std::min(du1, full - du1);
    ++total;
    if (dmin <= doubled_min_u) ++count;
    // next combination of n1 indices out of n
    int pos = n1 - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - n1 + pos) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int k = pos + 1; k < n1; ++k)
      pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
  }
  return static_cast<double>(count) / static_cast<double>(total);
}

double approx_two_sided_p(const std::vector<double>& pooled, int n1, int n2, double min_u) {
  double n = static_cast<double>(n1 + n2);
  // Tie-corrected variance over the pooled value multiset.
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  double mu = 0.5 * n1 * n2;
  double var = (static_cast<double>(n1) * n2 / 12.0) * ((n + 1.0) - tie_sum / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;  // every value identical
  double z = (min_u - mu + 0.5) / std::sqrt(var);
  return std::min(1.0, 2.0 * normal_cdf(z));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

namespace {

// Doubled min(U1, U2) of x (first n1 pooled values) vs the rest.
long long doubled_min_u(const std::vector<long long>& dranks, int n1, int n2) {
  long long dr1 = 0;
  for (int i = 0; i < n1; ++i) dr1 += dranks[static_cast<std::size_t>(i)];
  long long du1 = dr1 - static_cast<long long>(n1) * (n1 + 1);
  return std::min(du1, 2LL * n1 * n2 - du1);
}

}  // namespace

MwuResult mann_whitney_u(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("mann_whitney_u: both samples must be nonempty");
  }
  int n1 = static_cast<int>(x.size());
  int n2 = static_cast<int>(y.size());
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::vector<long long> dranks = doubled_midranks(pooled);
  long long dmin = doubled_min_u(dranks, n1, n2);

  MwuResult r;
  r.u = static_cast<double>(dmin) / 2.0;
  if (n1 + n2 <= 16) {
    r.p = exact_two_sided_p(dranks, n1, dmin);
  } else {
    r.p = approx_two_sided_p(pooled, n1, n2, r.u);
  }
  return r;
}

namespace detail {

double approx_p(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("approx_p: both samples must be nonempty");
  }
  int n1 = static_cast<int>(x.size());
  int n2 = static_cast<int>(y.size());
  std::vector<double> pooled(x);
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::vector<long long> dranks = doubled_midranks(pooled);
  double u = static_cast<double>(doubled_min_u(dranks, n1, n2)) / 2.0;
  return approx_two_sided_p(pooled, n1, n2, u);
}

}  // namespace detail

double cliffs_delta(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) {
    throw std::invalid_argument("cliffs_delta: both samples must be nonempty");
  }
  std::vector<double> ys(y);
  std::sort(ys.begin(), ys.end());
  long long wins = 0;
  long long losses = 0;
  for (double v : x) {
    auto lo = std::lower_bound(ys.begin(), ys.end(), v);
    auto hi = std::upper_bound(ys.begin(), ys.end(), v);
    wins += lo - ys.begin();         // y values strictly below v
    losses += ys.end() - hi;         // strictly above
  }
  return static_cast<double>(wins - losses) /
         (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

// ---------------------------------------------------------------------------
// contrasts

std::string Variable::label() const {
  if (general) return "general";
  return dep_type.label() + " " + interact::to_string(direction);
}

DatasetView make_view(const interact::PairDataset& dataset, const deps::DependencyGraph& graph) {
  DatasetView v;
  v.project_id = dataset.project_id;
  v.pair = dataset.pair;
  v.records.reserve(dataset.records.size());
  for (const interact::InteractionRecord& r : dataset.records) {
    RecordView rv;
    rv.type = r.type;
    rv.location = r.location;
    rv.edges.reserve(r.edges.size());
    for (const auto& [edge_idx, dir] : r.edges) {
      rv.edges.emplace_back(graph.edges[static_cast<std::size_t>(edge_idx)].type, dir);
    }
    v.records.push_back(std::move(rv));
  }
  return v;
}

namespace {

// Artifact kinds that can appear in a closure on the given pair side.
bool kind_in_closure(ArtifactKind side, ArtifactKind k) {
  if (side == ArtifactKind::Class) return k != ArtifactKind::Interface;
  return k == side;  // method sides are singleton closures
}

void check_spec(const ContrastSpec& spec) {
  if (spec.baseline == InteractionType::CS1_CS2) {
    throw std::invalid_argument("contrast baseline must be CS1-nonCS2 or nonCS1-CS2");
  }
  if (!spec.variable.general && !deps::validate_triple(spec.variable.dep_type)) {
    throw std::invalid_argument("specific variable requires a valid dependency triple");
  }
}

}  // namespace

bool spec_possible(const ContrastSpec& spec) {
  ArtifactKind k1 = smells::artifact_kind_of(spec.pair.cs1);
  ArtifactKind k2 = smells::artifact_kind_of(spec.pair.cs2);
  // Two distinct artifacts share a class only if at least one is a member.
  if (spec.location == RelativeLocation::Same && k1 == ArtifactKind::Class &&
      k2 == ArtifactKind::Class) {
    return false;
  }
  if (!spec.variable.general) {
    ArtifactKind src = spec.variable.dep_type.source_kind;
    ArtifactKind tgt = spec.variable.dep_type.target_kind;
    if (spec.variable.direction == FlowDirection::Backward) std::swap(src, tgt);
    if (!kind_in_closure(k1, src) || !kind_in_closure(k2, tgt)) return false;
  }
  return true;
}

namespace {

// Shared test core: split the records at one location into the CS1-CS2 side
// and the baseline side by the given value function, then run MWU + delta.
template <typename ValueOf>
ContrastOutcome test_between(const DatasetView& dataset, InteractionType baseline_type,
                             RelativeLocation location, ValueOf&& value_of) {
  ContrastOutcome out;
  std::vector<double> smelly;
  std::vector<double> baseline;
  for (const RecordView& r : dataset.records) {
    if (r.location != location) continue;
    if (r.type == InteractionType::CS1_CS2) {
      smelly.push_back(value_of(r));
    } else if (r.type == baseline_type) {
      baseline.push_back(value_of(r));
    }
  }
  if (smelly.empty() || baseline.empty()) {
    out.status = ContrastStatus::Absent;
    return out;
  }

  MwuResult mwu = mann_whitney_u(smelly, baseline);
  TestResult& t = out.result;
  t.u = mwu.u;
  t.p = mwu.p;
  t.delta = cliffs_delta(smelly, baseline);
  t.band = band_of(t.delta);
  t.median1 = median_of(smelly);
  t.median2 = median_of(baseline);
  t.n1 = static_cast<int>(smelly.size());
  t.n2 = static_cast<int>(baseline.size());
  t.significant = t.p < 0.05;
  out.status = ContrastStatus::Tested;
  return out;
}

}  // namespace

ContrastOutcome run_contrast(const DatasetView& dataset, const ContrastSpec& spec) {
  check_spec(spec);
  if (!spec_possible(spec)) {
    ContrastOutcome out;
    out.status = ContrastStatus::Impossible;
    return out;
  }
  return test_between(dataset, spec.baseline, spec.location, [&](const RecordView& r) -> double {
    if (spec.variable.general) return static_cast<double>(r.edges.size());
    long long c = 0;
    for (const auto& [type, dir] : r.edges) {
      if (type == spec.variable.dep_type && dir == spec.variable.direction) ++c;
    }
    return static_cast<double>(c);
  });
}

bool family_possible(const FamilyContrastSpec& spec) {
  ContrastSpec probe;
  probe.pair = spec.pair;
  probe.baseline = spec.baseline;
  probe.location = spec.location;
  if (!spec_possible(probe)) return false;  // same-location class pair
  for (const DependencyType& t : spec.triples) {
    probe.variable.general = false;
    probe.variable.dep_type = t;
    probe.variable.direction = spec.direction;
    if (spec_possible(probe)) return true;
  }
  return false;
}

ContrastOutcome run_family_contrast(const DatasetView& dataset, const FamilyContrastSpec& spec) {
  if (spec.baseline == InteractionType::CS1_CS2) {
    throw std::invalid_argument("contrast baseline must be CS1-nonCS2 or nonCS1-CS2");
  }
  if (spec.triples.empty()) {
    throw std::invalid_argument("a dependency-type group needs at least one member");
  }
  for (const DependencyType& t : spec.triples) {
    if (!deps::validate_triple(t)) {
      throw std::invalid_argument("group member is not a valid dependency triple");
    }
  }
  if (!family_possible(spec)) {
    ContrastOutcome out;
    out.status = ContrastStatus::Impossible;
    return out;
  }
  return test_between(dataset, spec.baseline, spec.location, [&](const RecordView& r) -> double {
    long long c = 0;
    for (const auto& [type, dir] : r.edges) {
      if (dir != spec.direction) continue;
      for (const DependencyType& t : spec.triples) {
        if (type == t) {
          ++c;
          break;
        }
      }
    }
    return static_cast<double>(c);
  });
}

// ---------------------------------------------------------------------------
// the study

const std::vector<Variable>& all_variables() {
  static const std::vector<Variable> vars = [] {
    std::vector<Variable> out;
    out.push_back(Variable{});  // general
    for (const DependencyType& t : deps::all_valid_triples()) {
      for (FlowDirection d : {FlowDirection::Forward, FlowDirection::Backward}) {
        Variable v;
        v.general = false;
        v.dep_type = t;
        v.direction = d;
        out.push_back(v);
      }
    }
    return out;
  }();
  return vars;
}

namespace {

std::vector<ContrastSpec> all_specs() {
  std::vector<ContrastSpec> out;
  for (const SmellPair& pair : interact::all_smell_pairs()) {
    for (InteractionType baseline : {InteractionType::CS1_nonCS2, InteractionType::nonCS1_CS2}) {
      for (RelativeLocation loc : {RelativeLocation::Same, RelativeLocation::Different}) {
        for (const Variable& v : all_variables()) {
          out.push_back({pair, baseline, loc, v});
        }
      }
    }
  }
  return out;
}

void count_rejection(std::map<DependencyType, std::pair<int, int>>& acc, const ContrastSpec& spec,
                     const ContrastOutcome& outcome) {
  if (spec.variable.general || outcome.status != ContrastStatus::Tested) return;
  if (!outcome.result.significant) return;
  auto& slot = acc[spec.variable.dep_type];
  ++slot.first;
  if (outcome.result.band != EffectBand::Negligible) ++slot.second;
}

std::vector<RejectionCount> finish_rejections(
    const std::map<DependencyType, std::pair<int, int>>& acc) {
  std::vector<RejectionCount> out;
  for (const DependencyType& t : deps::all_valid_triples()) {
    RejectionCount rc;
    rc.dep_type = t;
    auto it = acc.find(t);
    if (it != acc.end()) {
      rc.rejecting = it->second.first;
      rc.rejecting_excluding_negligible = it->second.second;
    }
    out.push_back(rc);
  }
  return out;
}

}  // namespace

StudyResults run_study(const StudyInput& input, Perspective perspective) {
  StudyResults results;
  results.perspective = perspective;

  // Stable project order: first appearance in the input.
  std::vector<std::string> projects;
  for (const DatasetView& d : input.datasets) {
    if (std::find(projects.begin(), projects.end(), d.project_id) == projects.end()) {
      projects.push_back(d.project_id);
    }
  }

  std::map<DependencyType, std::pair<int, int>> rejections;

  if (perspective == Perspective::Union) {
    for (const ContrastSpec& spec : all_specs()) {
      DatasetView pooled;
      pooled.project_id = "union";
      pooled.pair = spec.pair;
      for (const DatasetView& d : input.datasets) {
        if (d.pair == spec.pair) {
          pooled.records.insert(pooled.records.end(), d.records.begin(), d.records.end());
        }
      }
      ContrastOutcome outcome = run_contrast(pooled, spec);
      if (outcome.status == ContrastStatus::Tested) ++results.tests_run;
      count_rejection(rejections, spec, outcome);
      results.contrasts.push_back({spec, outcome});
    }
  } else {
    for (const ContrastSpec& spec : all_specs()) {
      int included = 0;
      int significant = 0;
      int nonnegative = 0;
      int negative = 0;
      for (const std::string& project : projects) {
        DatasetView merged;
        merged.project_id = project;
        merged.pair = spec.pair;
        for (const DatasetView& d : input.datasets) {
          if (d.project_id == project && d.pair == spec.pair) {
            merged.records.insert(merged.records.end(), d.records.begin(), d.records.end());
          }
        }
        ContrastOutcome outcome = run_contrast(merged, spec);
        if (outcome.status == ContrastStatus::Tested) {
          ++results.tests_run;
          ++included;
          if (outcome.result.significant) ++significant;
          if (outcome.result.delta >= 0.0) {
            ++nonnegative;
          } else {
            ++negative;
          }
        }
        count_rejection(rejections, spec, outcome);
        results.project_contrasts.push_back({project, {spec, outcome}});
      }
      PerSystemSummary s;
      s.spec = spec;
      s.included_projects = included;
      if (included > 0) {
        s.significance_rate = static_cast<double>(significant) / included;
        s.consistency_score = static_cast<double>(nonnegative - negative) / included;
      }
      results.summaries.push_back(s);
    }
  }

  results.rejections = finish_rejections(rejections);
  return results;
}

// ---------------------------------------------------------------------------
// evaluation sampling

int sample_size(long long population, double margin) {
  if (population < 1) throw std::invalid_argument("sample_size: population must be >= 1");
  const double z = 1.959964;
  double n0 = z * z * 0.25 / (margin * margin);
  double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  return static_cast<int>(std::ceil(n));
}

std::map<std::string, std::vector<int>> stratified_sample(
    const std::map<std::string, int>& per_project_counts, int n, std::uint64_t seed) {
  long long total = 0;
  for (const auto& [name, count] : per_project_counts) {
    if (count < 0) throw std::invalid_argument("stratified_sample: negative stratum size");
    total += count;
  }
  if (n < 0 || n > total) {
    throw std::invalid_argument("stratified_sample: sample larger than population");
  }

  // Largest-remainder allocation of n across strata, ties broken by name.
  struct Stratum {
    std::string name;
    int population;
    int allocated;
    double remainder;
  };
  std::vector<Stratum> strata;
  int allocated_total = 0;
  for (const auto& [name, count] : per_project_counts) {
    double quota = total == 0 ? 0.0
                              : static_cast<double>(n) * static_cast<double>(count) /
                                    static_cast<double>(total);
    int base = static_cast<int>(quota);
    strata.push_back({name, count, base, quota - base});
    allocated_total += base;
  }
  std::stable_sort(strata.begin(), strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.remainder != b.remainder) return a.remainder > b.remainder;
    return a.name < b.name;
  });
  int leftover = n - allocated_total;
  for (Stratum& s : strata) {
    if (leftover == 0) break;
    if (s.allocated < s.population) {
      ++s.allocated;
      --leftover;
    }
  }

  std::map<std::string, std::vector<int>> out;
  for (const Stratum& s : strata) {
    Rng rng(seed ^ fnv1a(s.name));
    std::vector<std::size_t> picked =
        sample_indices(rng, static_cast<std::size_t>(s.population),
                       static_cast<std::size_t>(s.allocated));
    std::vector<int> ids(picked.begin(), picked.end());
    out[s.name] = std::move(ids);
  }
  return out;
}

}  // namespace smelldep::stats
