#include "smelldep/smells/smells.hpp"

#include <utility>

namespace smelldep::smells {

using metrics::ClassMetrics;
using metrics::MethodMetrics;
using metrics::ThresholdConfig;
using model::ArtifactKind;
using model::CodeModel;

const char* to_string(SmellKind kind) {
  switch (kind) {
    case SmellKind::FE: return "FE";
    case SmellKind::BM: return "BM";
    case SmellKind::GC: return "GC";
    case SmellKind::BC: return "BC";
    case SmellKind::DC: return "DC";
  }
  return "FE";
}

bool smell_kind_from_string(const std::string& s, SmellKind& out) {
  static const std::pair<const char*, SmellKind> table[] = {
      {"FE", SmellKind::FE}, {"BM", SmellKind::BM}, {"GC", SmellKind::GC},
      {"BC", SmellKind::BC}, {"DC", SmellKind::DC},
  };
  for (const auto& [name, kind] : table) {
    if (s == name) {
      out = kind;
      return true;
    }
  }
  return false;
}

model::ArtifactKind artifact_kind_of(SmellKind kind) {
  switch (kind) {
    case SmellKind::FE:
    case SmellKind::BM:
      return ArtifactKind::FunctionalMethod;
    default:
      return ArtifactKind::Class;
  }
}

namespace {

bool is_feature_envy(const MethodMetrics& m, const ThresholdConfig& t) {
  return m.atfd_m > t.few_upper && m.laa < t.one_third && m.fdp <= t.few_lower;
}

bool is_brain_method(const MethodMetrics& m, const ThresholdConfig& t) {
  if (m.loc <= t.high_method_loc) return false;
  double ratio = static_cast<double>(m.cyclo) / static_cast<double>(m.loc);
  return ratio >= t.high_cyclo_ratio && m.maxnesting >= t.several && m.noav > t.many;
}

bool is_god_class(const ClassMetrics& c, const ThresholdConfig& t) {
  return c.atfd_c > t.few_upper && c.wmc >= t.very_high_wmc && c.tcc < t.one_third;
}

// The Brain Class size gates scale off the method-size and complexity
// thresholds: 3x/6x HIGH_METHOD_LOC, 2x VERY_HIGH_WMC.
bool is_brain_class(const ClassMetrics& c, const ThresholdConfig& t, bool already_god) {
  if (already_god) return false;
  bool size_gate = (c.bm_count > 1 && c.loc_c >= 3 * t.high_method_loc) ||
                   (c.bm_count == 1 && c.loc_c >= 6 * t.high_method_loc &&
                    c.wmc >= 2 * t.very_high_wmc);
  return size_gate && c.wmc >= t.very_high_wmc && c.tcc < t.half;
}

bool is_data_class(const ClassMetrics& c, const ThresholdConfig& t) {
  if (c.woc >= t.one_third) return false;
  int exposure = c.noap + c.noam;
  return (exposure > t.few_upper && c.wmc < t.high_wmc) ||
         (exposure > t.many_attr && c.wmc < t.very_high_wmc);
}

}  // namespace

Detection detect_all(const CodeModel& model, const std::vector<model::BodyFacts>& facts,
                     const ThresholdConfig& cfg) {
  Detection d;
  d.thresholds = cfg;
  const std::size_t n = model.artifacts.size();
  d.table.method.resize(n);
  d.table.cls.resize(n);
  for (auto& f : d.flags) f.assign(n, false);

  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].is_callable()) {
      d.table.method[i] =
          metrics::compute_method_metrics(model, static_cast<int>(i), facts[i]);
    }
  }

  std::vector<bool> brain(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind == ArtifactKind::FunctionalMethod &&
        is_brain_method(d.table.method[i], cfg)) {
      brain[i] = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind == ArtifactKind::Class) {
      d.table.cls[i] =
          metrics::compute_class_metrics(model, static_cast<int>(i), facts, d.table.method, brain);
    }
  }

  auto flag = [&](SmellKind kind, std::size_t artifact, std::map<std::string, double> evidence) {
    d.flags[static_cast<int>(kind)][artifact] = true;
    d.smelly[static_cast<int>(kind)].push_back(static_cast<int>(artifact));
    d.instances.push_back({kind, static_cast<int>(artifact), std::move(evidence)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind != ArtifactKind::FunctionalMethod) continue;
    const MethodMetrics& m = d.table.method[i];
    if (is_feature_envy(m, cfg)) {
      flag(SmellKind::FE, i,
           {{"ATFD_m", static_cast<double>(m.atfd_m)},
            {"LAA", m.laa},
            {"FDP", static_cast<double>(m.fdp)}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!brain[i]) continue;
    const MethodMetrics& m = d.table.method[i];
    flag(SmellKind::BM, i,
         {{"LOC", static_cast<double>(m.loc)},
          {"CYCLO", static_cast<double>(m.cyclo)},
          {"CYCLO_LOC", static_cast<double>(m.cyclo) / static_cast<double>(m.loc)},
          {"MAXNESTING", static_cast<double>(m.maxnesting)},
          {"NOAV", static_cast<double>(m.noav)}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind != ArtifactKind::Class) continue;
    const ClassMetrics& c = d.table.cls[i];
    if (is_god_class(c, cfg)) {
      flag(SmellKind::GC, i,
           {{"ATFD_c", static_cast<double>(c.atfd_c)},
            {"WMC", static_cast<double>(c.wmc)},
            {"TCC", c.tcc}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind != ArtifactKind::Class) continue;
    const ClassMetrics& c = d.table.cls[i];
    bool already_god = d.flags[static_cast<int>(SmellKind::GC)][i];
    if (is_brain_class(c, cfg, already_god)) {
      flag(SmellKind::BC, i,
           {{"BM_count", static_cast<double>(c.bm_count)},
            {"LOC_c", static_cast<double>(c.loc_c)},
            {"WMC", static_cast<double>(c.wmc)},
            {"TCC", c.tcc}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (model.artifacts[i].kind != ArtifactKind::Class) continue;
    const ClassMetrics& c = d.table.cls[i];
    if (is_data_class(c, cfg)) {
      flag(SmellKind::DC, i,
           {{"WOC", c.woc},
            {"NOAP", static_cast<double>(c.noap)},
            {"NOAM", static_cast<double>(c.noam)},
            {"WMC", static_cast<double>(c.wmc)}});
    }
  }
  return d;
}

std::vector<int> non_smell_counterparts(const CodeModel& model, const Detection& detection,
                                        SmellKind kind) {
  ArtifactKind wanted = artifact_kind_of(kind);
  std::vector<int> out;
  for (std::size_t i = 0; i < model.artifacts.size(); ++i) {
    if (model.artifacts[i].kind == wanted &&
        !detection.flags[static_cast<int>(kind)][i]) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

}  // namespace smelldep::smells
