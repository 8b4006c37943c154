#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "smelldep/metrics/metrics.hpp"
#include "smelldep/model/code_model.hpp"

namespace smelldep::smells {

// Declaration order doubles as the canonical kind order: smell pairs are
// always written with the lower-numbered kind first.
enum class SmellKind { FE, BM, GC, BC, DC };
inline constexpr int kSmellKindCount = 5;

const char* to_string(SmellKind kind);
bool smell_kind_from_string(const std::string& s, SmellKind& out);

// FE and BM apply to functional methods; GC, BC, DC to classes.
model::ArtifactKind artifact_kind_of(SmellKind kind);

struct SmellInstance {
  SmellKind kind;
  int artifact = -1;
  // Every metric the kind's rule consulted, by canonical metric name.
  std::map<std::string, double> evidence;
};

struct Detection {
  metrics::ThresholdConfig thresholds;
  metrics::MetricsTable table;
  // Instances grouped by kind (FE..DC), artifacts in model order within a kind.
  std::vector<SmellInstance> instances;
  // flags[kind][artifact]; smelly[kind] lists the flagged artifacts in order.
  std::array<std::vector<bool>, kSmellKindCount> flags;
  std::array<std::vector<int>, kSmellKindCount> smelly;

  bool is(SmellKind kind, int artifact) const {
    return flags[static_cast<int>(kind)][static_cast<std::size_t>(artifact)];
  }
};

// Runs all five detectors: method metrics, Brain Method flags, class metrics
// (BM counts included), then the class-level rules. GC is evaluated before BC
// because the BC strategy excludes classes already flagged GC.
Detection detect_all(const model::CodeModel& model,
                     const std::vector<model::BodyFacts>& facts,
                     const metrics::ThresholdConfig& cfg);

// All artifacts of the kind's artifact type not flagged with `kind` — they
// may well carry other smells.
std::vector<int> non_smell_counterparts(const model::CodeModel& model,
                                        const Detection& detection, SmellKind kind);

}  // namespace smelldep::smells
