#include "smelldep/metrics/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "smelldep/model/token.hpp"

namespace smelldep::metrics {

using model::Artifact;
using model::ArtifactKind;
using model::BodyFacts;
using model::CodeModel;
using model::RefEvent;

namespace ast = model::ast;

namespace {

const ast::CompilationUnit* unit_of(const CodeModel& model, int artifact) {
  int cls = model.class_of(artifact);
  if (cls < 0) return nullptr;
  int entry = model.type_entry_of[static_cast<std::size_t>(cls)];
  return entry < 0 ? nullptr : model.types[static_cast<std::size_t>(entry)].unit;
}

// Decision-point and nesting scan. Purely syntactic; lambda bodies and
// anonymous-class methods inside the body are charged to it, matching how
// their references are attributed.
class ComplexityWalker {
 public:
  int decisions = 0;
  int max_depth = 0;

  // `depth` = number of enclosing blocks; the method body block is depth 1.
  void walk_stmt(const ast::Stmt& s, int depth) {
    using K = ast::Stmt::Kind;
    switch (s.kind) {
      case K::Block:
        note(depth + 1);
        for (const auto& st : s.stmts) walk_stmt(*st, depth + 1);
        break;
      case K::If:
        ++decisions;
        walk_expr(s.expr.get(), depth);
        walk_body(s.body.get(), depth);
        // else-if chains stay at the same depth, like the usual layout
        if (s.else_body && s.else_body->kind == K::If) {
          walk_stmt(*s.else_body, depth);
        } else {
          walk_body(s.else_body.get(), depth);
        }
        break;
      case K::While:
      case K::DoWhile:
        ++decisions;
        walk_expr(s.expr.get(), depth);
        walk_body(s.body.get(), depth);
        break;
      case K::ForClassic:
        ++decisions;
        for (const auto& st : s.stmts) walk_stmt(*st, depth);
        walk_expr(s.expr.get(), depth);
        for (const auto& u : s.update_exprs) walk_expr(u.get(), depth);
        walk_body(s.body.get(), depth);
        break;
      case K::ForEach:
        ++decisions;
        walk_expr(s.expr.get(), depth);
        walk_body(s.body.get(), depth);
        break;
      case K::Switch:
        walk_expr(s.expr.get(), depth);
        for (const auto& c : s.cases) {
          decisions += static_cast<int>(c.label_exprs.size() + c.label_patterns.size());
          for (const auto& le : c.label_exprs) walk_expr(le.get(), depth);
          walk_expr(c.guard.get(), depth);
          if (!c.body.empty()) note(depth + 1);
          for (const auto& st : c.body) walk_stmt(*st, depth + 1);
        }
        break;
      case K::Try:
        decisions += static_cast<int>(s.catches.size());
        for (const auto& r : s.stmts) walk_stmt(*r, depth);
        walk_body(s.body.get(), depth);
        for (const auto& c : s.catches) walk_body(c.block.get(), depth);
        walk_body(s.finally_body.get(), depth);
        break;
      case K::Synchronized:
        walk_expr(s.expr.get(), depth);
        walk_body(s.body.get(), depth);
        break;
      case K::Labeled:
        if (s.body) walk_stmt(*s.body, depth);
        break;
      case K::LocalVar:
        for (const auto& d : s.declarators) walk_expr(d.init.get(), depth);
        break;
      case K::LocalType:
        if (s.local_type) walk_members(s.local_type->members, depth);
        break;
      case K::Return:
      case K::Throw:
      case K::Yield:
      case K::ExprStmt:
        walk_expr(s.expr.get(), depth);
        break;
      case K::Assert:
        walk_expr(s.expr.get(), depth);
        walk_expr(s.expr2.get(), depth);
        break;
      case K::Break:
      case K::Continue:
      case K::Empty:
        break;
    }
  }

 private:
  void note(int depth) { max_depth = std::max(max_depth, depth); }

  // A control structure's body nests one level deeper whether or not the
  // source wrote braces.
  void walk_body(const ast::Stmt* s, int depth) {
    if (!s) return;
    if (s->kind == ast::Stmt::Kind::Block) {
      walk_stmt(*s, depth);
    } else {
      note(depth + 1);
      walk_stmt(*s, depth + 1);
    }
  }

  void walk_members(const std::vector<std::unique_ptr<ast::Member>>& members, int depth) {
    for (const auto& m : members) {
      switch (m->kind) {
        case ast::Member::Kind::Field:
          for (const auto& d : m->field->declarators) walk_expr(d.init.get(), depth);
          break;
        case ast::Member::Kind::Method:
          if (m->method->body) walk_stmt(*m->method->body, depth);
          break;
        case ast::Member::Kind::Init:
          if (m->init->body) walk_stmt(*m->init->body, depth);
          break;
        case ast::Member::Kind::Type:
          walk_members(m->type->members, depth);
          break;
      }
    }
  }

  void walk_expr(const ast::Expr* e, int depth) {
    if (!e) return;
    using K = ast::Expr::Kind;
    switch (e->kind) {
      case K::Ternary:
        ++decisions;
        break;
      case K::Binary:
        if (e->name == "&&" || e->name == "||") ++decisions;
        break;
      case K::Lambda:
        if (e->body) walk_stmt(*e->body, depth);
        break;
      case K::ObjectCreation:
        walk_members(e->anon_members, depth);
        break;
      case K::SwitchExpr:
        if (e->body) walk_stmt(*e->body, depth);
        break;
      default:
        break;
    }
    walk_expr(e->lhs.get(), depth);
    walk_expr(e->rhs.get(), depth);
    walk_expr(e->third.get(), depth);
    for (const auto& a : e->args) walk_expr(a.get(), depth);
  }
};

// Distinct fields a body touches, split by ownership. `direct` holds only
// plain reads/writes (NOAV counts those); own/foreign add accessor-mediated
// access (ATFD and LAA count those too).
struct AttrSets {
  std::set<int> own, foreign, direct;
};

AttrSets attribute_accesses(const CodeModel& model, int self_entry, const BodyFacts& facts) {
  AttrSets out;
  std::set<int> own_types;
  if (self_entry >= 0) {
    for (int t : model::hierarchy_of(model, self_entry)) own_types.insert(t);
  }
  for (const RefEvent& e : facts.events) {
    int field = -1;
    bool direct = false;
    if (e.kind == RefEvent::Kind::FieldRead || e.kind == RefEvent::Kind::FieldWrite) {
      field = e.target;
      direct = true;
    } else if (e.kind == RefEvent::Kind::Call &&
               model.at(e.target).kind == ArtifactKind::Accessor &&
               model.at(e.target).backing_field >= 0) {
      field = model.at(e.target).backing_field;
    } else {
      continue;
    }
    if (direct) out.direct.insert(field);
    int decl_entry =
        model.type_entry_of[static_cast<std::size_t>(model.at(field).declaring)];
    if (decl_entry >= 0 && own_types.count(decl_entry)) {
      out.own.insert(field);
    } else {
      out.foreign.insert(field);
    }
  }
  return out;
}

}  // namespace

MethodMetrics compute_method_metrics(const CodeModel& model, int artifact,
                                     const BodyFacts& facts) {
  MethodMetrics mm;
  const Artifact& a = model.at(artifact);
  if (const auto* unit = unit_of(model, artifact)) {
    mm.loc = model::count_code_lines(unit->line_has_code, a.line, a.end_line);
  }
  ComplexityWalker walker;
  if (a.method_decl && a.method_decl->body) walker.walk_stmt(*a.method_decl->body, 0);
  mm.cyclo = 1 + walker.decisions;
  mm.maxnesting = walker.max_depth;

  int self_entry = -1;
  int cls = model.class_of(artifact);
  if (cls >= 0) self_entry = model.type_entry_of[static_cast<std::size_t>(cls)];
  AttrSets attrs = attribute_accesses(model, self_entry, facts);
  mm.noav = static_cast<int>(facts.vars_accessed.size() + attrs.direct.size());
  mm.atfd_m = static_cast<int>(attrs.foreign.size());
  std::set<int> providers;
  for (int f : attrs.foreign) providers.insert(model.at(f).declaring);
  mm.fdp = static_cast<int>(providers.size());
  std::size_t touched = attrs.own.size() + attrs.foreign.size();
  mm.laa = touched == 0 ? 1.0 : static_cast<double>(attrs.own.size()) / static_cast<double>(touched);
  return mm;
}

ClassMetrics compute_class_metrics(const CodeModel& model, int cls_artifact,
                                   const std::vector<model::BodyFacts>& facts,
                                   const std::vector<MethodMetrics>& method_table,
                                   const std::vector<bool>& brain_method) {
  ClassMetrics cm;
  const Artifact& cls = model.at(cls_artifact);
  if (const auto* unit = unit_of(model, cls_artifact)) {
    cm.loc_c = model::count_code_lines(unit->line_has_code, cls.line, cls.end_line);
  }
  int self_entry = model.type_entry_of[static_cast<std::size_t>(cls_artifact)];

  int public_fm = 0, public_methods = 0;
  std::set<int> foreign_union;
  std::vector<int> visible_methods;

  for (int m : model.members[static_cast<std::size_t>(cls_artifact)]) {
    const Artifact& a = model.at(m);
    switch (a.kind) {
      case ArtifactKind::FunctionalMethod:
      case ArtifactKind::Accessor:
        ++cm.nom;
        cm.wmc += method_table[static_cast<std::size_t>(m)].cyclo;
        if (brain_method[static_cast<std::size_t>(m)]) ++cm.bm_count;
        if (a.kind == ArtifactKind::Accessor) ++cm.noam;
        if (a.is_public) {
          ++public_methods;
          if (a.kind == ArtifactKind::FunctionalMethod) ++public_fm;
        }
        if (!a.is_private) visible_methods.push_back(m);
        break;
      case ArtifactKind::Constructor:
        cm.wmc += method_table[static_cast<std::size_t>(m)].cyclo;
        break;
      case ArtifactKind::Field:
        if (a.is_public && !(a.is_static && a.is_final)) ++cm.noap;
        break;
      default:
        break;
    }
    if (a.is_callable()) {
      AttrSets attrs = attribute_accesses(model, self_entry, facts[static_cast<std::size_t>(m)]);
      foreign_union.insert(attrs.foreign.begin(), attrs.foreign.end());
    }
  }
  cm.atfd_c = static_cast<int>(foreign_union.size());

  int woc_denominator = public_methods + cm.noap;
  cm.woc = woc_denominator == 0 ? 0.0
                                : static_cast<double>(public_fm) / static_cast<double>(woc_denominator);

  // TCC: visible (non-private) methods are connected when they touch a common
  // attribute declared by this class, directly or through its own accessors.
  if (visible_methods.size() < 2) {
    cm.tcc = 1.0;
  } else {
    std::vector<std::set<int>> touched(visible_methods.size());
    for (std::size_t i = 0; i < visible_methods.size(); ++i) {
      const BodyFacts& f = facts[static_cast<std::size_t>(visible_methods[i])];
      for (const RefEvent& e : f.events) {
        int field = -1;
        if (e.kind == RefEvent::Kind::FieldRead || e.kind == RefEvent::Kind::FieldWrite) {
          field = e.target;
        } else if (e.kind == RefEvent::Kind::Call &&
                   model.at(e.target).kind == ArtifactKind::Accessor &&
                   model.at(e.target).declaring == cls_artifact) {
          field = model.at(e.target).backing_field;
        }
        if (field >= 0 && model.at(field).declaring == cls_artifact) {
          touched[i].insert(field);
        }
      }
    }
    int connected = 0, pairs = 0;
    for (std::size_t i = 0; i < touched.size(); ++i) {
      for (std::size_t j = i + 1; j < touched.size(); ++j) {
        ++pairs;
        bool share = std::any_of(touched[i].begin(), touched[i].end(),
                                 [&](int f) { return touched[j].count(f) > 0; });
        if (share) ++connected;
      }
    }
    cm.tcc = static_cast<double>(connected) / static_cast<double>(pairs);
  }
  return cm;
}

namespace {

struct ThresholdField {
  const char* name;
  bool integral;
  int ThresholdConfig::* int_member;
  double ThresholdConfig::* double_member;
};

const ThresholdField kThresholdFields[] = {
    {"FEW_upper", true, &ThresholdConfig::few_upper, nullptr},
    {"FEW_lower", true, &ThresholdConfig::few_lower, nullptr},
    {"ONE_THIRD", false, nullptr, &ThresholdConfig::one_third},
    {"HALF", false, nullptr, &ThresholdConfig::half},
    {"HIGH_WMC", true, &ThresholdConfig::high_wmc, nullptr},
    {"VERY_HIGH_WMC", true, &ThresholdConfig::very_high_wmc, nullptr},
    {"HIGH_METHOD_LOC", true, &ThresholdConfig::high_method_loc, nullptr},
    {"HIGH_CYCLO_RATIO", false, nullptr, &ThresholdConfig::high_cyclo_ratio},
    {"SEVERAL", true, &ThresholdConfig::several, nullptr},
    {"MANY", true, &ThresholdConfig::many, nullptr},
    {"MANY_ATTR", true, &ThresholdConfig::many_attr, nullptr},
};

}  // namespace

ThresholdConfig ThresholdConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("thresholds: expected a JSON object");
  ThresholdConfig cfg;
  for (const auto& [key, value] : j.items()) {
    const ThresholdField* field = nullptr;
    for (const auto& f : kThresholdFields) {
      if (key == f.name) {
        field = &f;
        break;
      }
    }
    if (!field) throw std::runtime_error("thresholds: unknown key '" + key + "'");
    if (!value.is_number()) throw std::runtime_error("thresholds: '" + key + "' must be a number");
    double v = value.get<double>();
    if (v <= 0) throw std::runtime_error("thresholds: '" + key + "' must be positive");
    if (field->integral) {
      cfg.*(field->int_member) = value.get<int>();
    } else {
      cfg.*(field->double_member) = v;
    }
  }
  if (cfg.few_lower > cfg.few_upper) {
    throw std::runtime_error("thresholds: FEW_lower must not exceed FEW_upper");
  }
  return cfg;
}

nlohmann::json ThresholdConfig::to_json() const {
  nlohmann::json j;
  for (const auto& f : kThresholdFields) {
    if (f.integral) {
      j[f.name] = this->*(f.int_member);
    } else {
      j[f.name] = this->*(f.double_member);
    }
  }
  return j;
}

}  // namespace smelldep::metrics
