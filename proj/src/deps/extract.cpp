#include "smelldep/deps/dependency.hpp"

#include <algorithm>

namespace smelldep::deps {

using model::ArtifactKind;
using model::CodeModel;
namespace ast = model::ast;

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Call: return "call";
    case Relation::Create: return "create";
    case Relation::Contain: return "contain";
    case Relation::Cast: return "cast";
    case Relation::Use: return "use";
    case Relation::Throws: return "throws";
    case Relation::Return: return "return";
    case Relation::Parameter: return "parameter";
    case Relation::Extend: return "extend";
    case Relation::Implement: return "implement";
  }
  return "call";
}

bool relation_from_string(const std::string& s, Relation& out) {
  for (int i = 0; i < kRelationCount; ++i) {
    Relation r = static_cast<Relation>(i);
    if (s == to_string(r)) {
      out = r;
      return true;
    }
  }
  return false;
}

const char* short_kind(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::Class: return "Class";
    case ArtifactKind::Interface: return "Interface";
    case ArtifactKind::FunctionalMethod: return "FM";
    case ArtifactKind::Accessor: return "Accessor";
    case ArtifactKind::Constructor: return "Constructor";
    case ArtifactKind::Field: return "Field";
  }
  return "FM";
}

std::string DependencyType::label() const {
  return std::string("(") + to_string(relation) + ", " + short_kind(source_kind) + ", " +
         short_kind(target_kind) + ")";
}

namespace {

bool kind_in(ArtifactKind k, std::initializer_list<ArtifactKind> set) {
  return std::find(set.begin(), set.end(), k) != set.end();
}

}  // namespace

bool validate_triple(const DependencyType& t) {
  using AK = ArtifactKind;
  const AK s = t.source_kind;
  const AK d = t.target_kind;
  switch (t.relation) {
    case Relation::Call:
      return kind_in(s, {AK::FunctionalMethod, AK::Constructor, AK::Field}) &&
             kind_in(d, {AK::FunctionalMethod, AK::Accessor, AK::Constructor});
    case Relation::Create:
    case Relation::Contain:
    case Relation::Cast:
      return kind_in(s, {AK::FunctionalMethod, AK::Constructor, AK::Field}) && d == AK::Class;
    case Relation::Use:
      return kind_in(s, {AK::FunctionalMethod, AK::Accessor, AK::Constructor, AK::Field}) &&
             d == AK::Field;
    case Relation::Throws:
      return kind_in(s, {AK::FunctionalMethod, AK::Constructor}) && d == AK::Class;
    case Relation::Return:
      return kind_in(s, {AK::FunctionalMethod, AK::Accessor}) && d == AK::Class;
    case Relation::Parameter:
      return kind_in(s, {AK::FunctionalMethod, AK::Accessor, AK::Constructor}) && d == AK::Class;
    case Relation::Extend:
      return s == AK::Class && d == AK::Class;
    case Relation::Implement:
      return s == AK::Class && d == AK::Interface;
  }
  return false;
}

const std::vector<DependencyType>& all_valid_triples() {
  static const std::vector<DependencyType> triples = [] {
    static const ArtifactKind kKinds[] = {ArtifactKind::Class,           ArtifactKind::Interface,
                                          ArtifactKind::FunctionalMethod, ArtifactKind::Accessor,
                                          ArtifactKind::Constructor,      ArtifactKind::Field};
    std::vector<DependencyType> out;
    for (int r = 0; r < kRelationCount; ++r) {
      for (ArtifactKind s : kKinds) {
        for (ArtifactKind d : kKinds) {
          DependencyType t{static_cast<Relation>(r), s, d};
          if (validate_triple(t)) out.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }();
  return triples;
}

namespace {

class Extractor {
 public:
  Extractor(const CodeModel& model, const std::vector<model::BodyFacts>& facts)
      : model_(model), facts_(facts) {}

  DependencyGraph run() {
    for (std::size_t i = 0; i < model_.artifacts.size(); ++i) {
      const model::Artifact& a = model_.artifacts[i];
      int src = static_cast<int>(i);
      if (a.kind == ArtifactKind::Class) {
        hierarchy_edges(src);
      } else if (a.is_callable()) {
        signature_edges(src, a);
        body_edges(src, a.kind);
      } else if (a.kind == ArtifactKind::Field) {
        declared_type_edge(src, a);
        body_edges(src, a.kind);
      }
    }
    build_indexes();
    return std::move(graph_);
  }

 private:
  // The type's TypeEntry index, via the artifact.
  int entry_of(int artifact_idx) const {
    return model_.type_entry_of[static_cast<std::size_t>(artifact_idx)];
  }

  // Resolution context for a member artifact: its declaring type's entry
  // and compilation unit.
  int context_entry(const model::Artifact& a) const {
    return a.declaring < 0 ? -1 : entry_of(a.declaring);
  }

  void emit(Relation relation, int source, int target, int line, int col) {
    if (source == target || target < 0) return;
    DependencyType type{relation, model_.at(source).kind, model_.at(target).kind};
    if (!validate_triple(type)) return;
    graph_.edges.push_back({type, source, target, line, col});
  }

  // Resolves a declared type reference to its artifact (arrays unwrap to
  // the element type); -1 for primitives and out-of-corpus names.
  int type_artifact_of(const ast::TypeRef& ref, int ctx_entry, const ast::CompilationUnit* unit) {
    if (ref.empty() || ref.primitive) return -1;
    int entry = model::resolve_type(model_, ref, ctx_entry, unit);
    if (entry < 0) return -1;
    return model_.types[static_cast<std::size_t>(entry)].artifact;
  }

  void hierarchy_edges(int src) {
    int entry = entry_of(src);
    if (entry < 0) return;
    const model::TypeEntry& te = model_.types[static_cast<std::size_t>(entry)];
    const model::Artifact& a = model_.at(src);
    if (te.superclass >= 0) {
      emit(Relation::Extend, src, model_.types[static_cast<std::size_t>(te.superclass)].artifact,
           a.line, 0);
    }
    for (int iface : te.interfaces) {
      emit(Relation::Implement, src, model_.types[static_cast<std::size_t>(iface)].artifact,
           a.line, 0);
    }
  }

  void signature_edges(int src, const model::Artifact& a) {
    const ast::MethodDecl* decl = a.method_decl;
    if (!decl) return;
    int ctx = context_entry(a);
    const ast::CompilationUnit* unit =
        ctx < 0 ? nullptr : model_.types[static_cast<std::size_t>(ctx)].unit;
    for (const ast::Param& p : decl->params) {
      emit(Relation::Parameter, src, type_artifact_of(p.type, ctx, unit), p.line, p.col);
    }
    if (!decl->is_ctor) {
      emit(Relation::Return, src, type_artifact_of(decl->return_type, ctx, unit),
           decl->return_type.line, decl->return_type.col);
    }
    for (const ast::TypeRef& t : decl->throws_types) {
      emit(Relation::Throws, src, type_artifact_of(t, ctx, unit), t.line, t.col);
    }
  }

  // The declared class type of a field (contain's Field-source row covers
  // declarations, not initializers). Enum constants are fields of their enum
  // type; record components carry their component type.
  void declared_type_edge(int src, const model::Artifact& a) {
    int ctx = context_entry(a);
    const ast::CompilationUnit* unit =
        ctx < 0 ? nullptr : model_.types[static_cast<std::size_t>(ctx)].unit;
    if (a.field_decl) {
      emit(Relation::Contain, src, type_artifact_of(a.field_decl->type, ctx, unit),
           a.field_decl->type.line, a.field_decl->type.col);
    } else if (a.record_component) {
      emit(Relation::Contain, src, type_artifact_of(a.record_component->type, ctx, unit),
           a.record_component->line, a.record_component->col);
    } else if (a.enum_constant && a.declaring >= 0) {
      emit(Relation::Contain, src, a.declaring, a.enum_constant->line, a.enum_constant->col);
    }
  }

  void body_edges(int src, ArtifactKind) {
    for (const model::RefEvent& e : facts_[static_cast<std::size_t>(src)].events) {
      switch (e.kind) {
        case model::RefEvent::Kind::Call:
          emit(Relation::Call, src, e.target, e.line, e.col);
          break;
        case model::RefEvent::Kind::Create:
          emit(Relation::Create, src, e.target, e.line, e.col);
          break;
        case model::RefEvent::Kind::LocalDecl:
          emit(Relation::Contain, src, e.target, e.line, e.col);
          break;
        case model::RefEvent::Kind::Cast:
          emit(Relation::Cast, src, e.target, e.line, e.col);
          break;
        case model::RefEvent::Kind::FieldRead:
        case model::RefEvent::Kind::FieldWrite:
          emit(Relation::Use, src, e.target, e.line, e.col);
          break;
        case model::RefEvent::Kind::ThrowStmt:
          emit(Relation::Throws, src, e.target, e.line, e.col);
          break;
      }
    }
  }

  void build_indexes() {
    const std::size_t n = model_.artifacts.size();
    graph_.by_source.assign(n, {});
    graph_.by_target.assign(n, {});
    graph_.by_class.assign(n, {});
    for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
      const DependencyEdge& edge = graph_.edges[e];
      int idx = static_cast<int>(e);
      graph_.by_source[static_cast<std::size_t>(edge.source)].push_back(idx);
      graph_.by_target[static_cast<std::size_t>(edge.target)].push_back(idx);
      int sc = model_.class_of(edge.source);
      int tc = model_.class_of(edge.target);
      if (sc >= 0) graph_.by_class[static_cast<std::size_t>(sc)].push_back(idx);
      if (tc >= 0 && tc != sc) graph_.by_class[static_cast<std::size_t>(tc)].push_back(idx);
    }
  }

  const CodeModel& model_;
  const std::vector<model::BodyFacts>& facts_;
  DependencyGraph graph_;
};

}  // namespace

DependencyGraph extract_dependencies(const CodeModel& model,
                                     const std::vector<model::BodyFacts>& facts) {
  return Extractor(model, facts).run();
}

}  // namespace smelldep::deps
