#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "smelldep/model/code_model.hpp"
#include "smelldep/model/resolve.hpp"

namespace smelldep::deps {

// The ten dependency relations. String forms are the lowercase relation
// names ("call" ... "implement").
enum class Relation {
  Call,
  Create,
  Contain,
  Cast,
  Use,
  Throws,
  Return,
  Parameter,
  Extend,
  Implement,
};
inline constexpr int kRelationCount = 10;

const char* to_string(Relation r);
bool relation_from_string(const std::string& s, Relation& out);

// Short artifact-kind names as used in triple labels: FM, Accessor,
// Constructor, Class, Interface, Field.
const char* short_kind(model::ArtifactKind kind);

// The abstract kind of a dependency: relation plus the source and target
// artifact kinds. Ordering follows (relation, source_kind, target_kind)
// so triples sort into relation-major blocks.
struct DependencyType {
  Relation relation = Relation::Call;
  model::ArtifactKind source_kind = model::ArtifactKind::FunctionalMethod;
  model::ArtifactKind target_kind = model::ArtifactKind::FunctionalMethod;

  friend bool operator==(const DependencyType& a, const DependencyType& b) {
    return a.relation == b.relation && a.source_kind == b.source_kind &&
           a.target_kind == b.target_kind;
  }
  friend bool operator<(const DependencyType& a, const DependencyType& b) {
    return std::tuple(static_cast<int>(a.relation), static_cast<int>(a.source_kind),
                      static_cast<int>(a.target_kind)) <
           std::tuple(static_cast<int>(b.relation), static_cast<int>(b.source_kind),
                      static_cast<int>(b.target_kind));
  }

  // "(call, FM, Accessor)" — the display form used in reports.
  std::string label() const;
};

// True iff the (source kind, target kind) pair belongs to the relation's
// source/target sets:
//   call       {FM, Constructor, Field}           -> {FM, Accessor, Constructor}
//   create     {FM, Constructor, Field}           -> {Class}
//   contain    {FM, Constructor, Field}           -> {Class}
//   cast       {FM, Constructor, Field}           -> {Class}
//   use        {FM, Accessor, Constructor, Field} -> {Field}
//   throws     {FM, Constructor}                  -> {Class}
//   return     {FM, Accessor}                     -> {Class}
//   parameter  {FM, Accessor, Constructor}        -> {Class}
//   extend     {Class}                            -> {Class}
//   implement  {Class}                            -> {Interface}
// 31 triples in total.
bool validate_triple(const DependencyType& type);

// All 31 valid triples in DependencyType order.
const std::vector<DependencyType>& all_valid_triples();

struct DependencyEdge {
  DependencyType type;
  int source = -1;  // artifact index
  int target = -1;  // artifact index; never equal to source
  int line = 0;     // reference site within the source artifact's file
  int col = 0;
};

// Every extracted edge plus lookup indexes. Edge order is deterministic:
// artifacts in model order, each artifact's signature-level edges
// (extend/implement, parameters, return, throws clause) before its body
// references in source order.
struct DependencyGraph {
  std::vector<DependencyEdge> edges;

  // Indexed by artifact: the edge indices with that source / target.
  std::vector<std::vector<int>> by_source;
  std::vector<std::vector<int>> by_target;

  // Indexed by artifact: for a Class/Interface artifact, the edges with
  // either endpoint inside it (the endpoint's declaring class, or the type
  // itself); an edge within one class appears once. Empty for non-types.
  std::vector<std::vector<int>> by_class;
};

// Maps every resolved reference to Table-1-typed edges: one edge per
// occurrence site (multiset semantics), in-corpus targets only, self-edges
// dropped, and only triples accepted by validate_triple — e.g. a local
// variable of an interface type or an accessor's throws clause produce
// nothing. `facts` must be collect_body_facts output for `model`.
DependencyGraph extract_dependencies(const model::CodeModel& model,
                                     const std::vector<model::BodyFacts>& facts);

}  // namespace smelldep::deps
