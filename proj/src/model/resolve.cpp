#include "smelldep/model/resolve.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace smelldep::model {

namespace {

std::string join_parts(const std::vector<std::string>& parts, std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) {
    if (i) s.push_back('.');
    s += parts[i];
  }
  return s;
}

// Entry plus its resolved supertypes, breadth-first (superclass before
// interfaces at each level). The visited guard tolerates bad input; genuine
// cycles are broken by link_hierarchy before lookups run.
std::vector<int> collect_hierarchy(const CodeModel& model, int entry_idx) {
  std::vector<int> out;
  std::vector<char> seen(model.types.size(), 0);
  std::deque<int> queue{entry_idx};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
    seen[static_cast<std::size_t>(t)] = 1;
    out.push_back(t);
    const TypeEntry& e = model.types[static_cast<std::size_t>(t)];
    if (e.superclass >= 0) queue.push_back(e.superclass);
    for (int f : e.interfaces) queue.push_back(f);
  }
  return out;
}

int find_nested_in_hierarchy(const CodeModel& model, int entry_idx, const std::string& name) {
  for (int t : collect_hierarchy(model, entry_idx)) {
    const auto& nested = model.types[static_cast<std::size_t>(t)].nested;
    auto it = nested.find(name);
    if (it != nested.end()) return it->second;
  }
  return -1;
}

// First identifier of a dotted type reference, resolved per Java's scoping
// order: lexical scope (own name, member types incl. inherited), single-type
// imports, this compilation unit, same package, on-demand imports.
int resolve_simple(const CodeModel& model, const std::string& name, int ctx,
                   const ast::CompilationUnit* unit) {
  for (int t = ctx; t >= 0; t = model.types[static_cast<std::size_t>(t)].enclosing) {
    if (model.types[static_cast<std::size_t>(t)].decl->name == name) return t;
    int n = find_nested_in_hierarchy(model, t, name);
    if (n >= 0) return n;
  }
  if (!unit) return -1;
  for (const auto& imp : unit->imports) {
    if (imp.on_demand || imp.parts.empty() || imp.parts.back() != name) continue;
    auto it = model.type_by_fqn.find(join_parts(imp.parts, imp.parts.size()));
    if (it != model.type_by_fqn.end()) return it->second;
  }
  for (const auto& t : unit->types) {
    if (t->name != name) continue;
    std::string fqn = unit->package.empty() ? name : unit->package + "." + name;
    auto it = model.type_by_fqn.find(fqn);
    if (it != model.type_by_fqn.end()) return it->second;
  }
  {
    std::string fqn = unit->package.empty() ? name : unit->package + "." + name;
    auto it = model.type_by_fqn.find(fqn);
    if (it != model.type_by_fqn.end()) return it->second;
  }
  for (const auto& imp : unit->imports) {
    if (!imp.on_demand) continue;
    auto it = model.type_by_fqn.find(join_parts(imp.parts, imp.parts.size()) + "." + name);
    if (it != model.type_by_fqn.end()) return it->second;
  }
  return -1;
}

int descend_nested(const CodeModel& model, int entry, const std::vector<std::string>& parts,
                   std::size_t from) {
  for (std::size_t i = from; i < parts.size(); ++i) {
    if (entry < 0) return -1;
    entry = find_nested_in_hierarchy(model, entry, parts[i]);
  }
  return entry;
}

}  // namespace

int resolve_type(const CodeModel& model, const ast::TypeRef& ref, int context_entry,
                 const ast::CompilationUnit* unit) {
  if (ref.empty() || ref.primitive) return -1;
  if (ref.parts.size() == 1) {
    for (int t = context_entry; t >= 0;
         t = model.types[static_cast<std::size_t>(t)].enclosing) {
      const auto& tps = model.types[static_cast<std::size_t>(t)].type_params;
      if (std::find(tps.begin(), tps.end(), ref.parts[0]) != tps.end()) return -1;
    }
  }
  int e = resolve_simple(model, ref.parts[0], context_entry, unit);
  if (e >= 0) {
    e = descend_nested(model, e, ref.parts, 1);
    if (e >= 0) return e;
  }
  // Fully-qualified references bypass scoping entirely.
  auto it = model.type_by_fqn.find(ref.dotted());
  return it == model.type_by_fqn.end() ? -1 : it->second;
}

void link_hierarchy(CodeModel& model) {
  // Superclass links feed inherited-member-type lookup, which can in turn
  // resolve further extends clauses, so iterate to a fixpoint. Resolution
  // only ever gains links, so this converges.
  bool changed = true;
  std::size_t pass = 0;
  while (changed && pass++ <= model.types.size() + 1) {
    changed = false;
    for (std::size_t i = 0; i < model.types.size(); ++i) {
      const ast::TypeDecl& d = *model.types[i].decl;
      const ast::CompilationUnit* unit = model.types[i].unit;
      int ctx = static_cast<int>(i);
      int sup = d.extends_type.empty() ? -1 : resolve_type(model, d.extends_type, ctx, unit);
      std::vector<int> ifaces;
      for (const auto& r : d.extends_types) {
        int e = resolve_type(model, r, ctx, unit);
        if (e >= 0) ifaces.push_back(e);
      }
      for (const auto& r : d.implements_types) {
        int e = resolve_type(model, r, ctx, unit);
        if (e >= 0) ifaces.push_back(e);
      }
      TypeEntry& t = model.types[i];
      if (sup != t.superclass || ifaces != t.interfaces) {
        t.superclass = sup;
        t.interfaces = std::move(ifaces);
        changed = true;
      }
    }
  }

  // Break inheritance cycles (invalid Java, but inputs are untrusted) so
  // every later hierarchy walk terminates.
  enum : char { White, Grey, Black };
  std::vector<char> color(model.types.size(), White);
  std::function<void(int)> dfs = [&](int u) {
    color[static_cast<std::size_t>(u)] = Grey;
    TypeEntry& t = model.types[static_cast<std::size_t>(u)];
    const Artifact& ua = model.at(t.artifact);
    if (t.superclass >= 0) {
      if (color[static_cast<std::size_t>(t.superclass)] == Grey) {
        model.diagnostics.warning("inheritance-cycle", ua.file, ua.line,
                                  "inheritance cycle at " + t.fqn + "; superclass link dropped");
        t.superclass = -1;
      } else if (color[static_cast<std::size_t>(t.superclass)] == White) {
        dfs(t.superclass);
      }
    }
    std::vector<int> kept;
    for (int f : t.interfaces) {
      if (color[static_cast<std::size_t>(f)] == Grey) {
        model.diagnostics.warning("inheritance-cycle", ua.file, ua.line,
                                  "inheritance cycle at " + t.fqn + "; interface link dropped");
        continue;
      }
      if (color[static_cast<std::size_t>(f)] == White) dfs(f);
      kept.push_back(f);
    }
    t.interfaces = std::move(kept);
    color[static_cast<std::size_t>(u)] = Black;
  };
  for (std::size_t i = 0; i < model.types.size(); ++i) {
    if (color[i] == White) dfs(static_cast<int>(i));
  }
}

std::vector<int> hierarchy_of(const CodeModel& model, int entry_idx) {
  return collect_hierarchy(model, entry_idx);
}

int find_field(const CodeModel& model, int entry_idx, const std::string& name) {
  for (int t : collect_hierarchy(model, entry_idx)) {
    const auto& fields = model.types[static_cast<std::size_t>(t)].fields;
    auto it = fields.find(name);
    if (it != fields.end()) return it->second;
  }
  return -1;
}

namespace {

const std::vector<ast::Param>& params_of(const CodeModel& model, int artifact) {
  return model.at(artifact).method_decl->params;
}

bool varargs_accepts(const std::vector<ast::Param>& ps, std::size_t argc) {
  return !ps.empty() && ps.back().type.dims > 0 && argc + 1 >= ps.size();
}

// Deterministic choice among equally-plausible overloads.
int lexically_first(const CodeModel& model, const std::vector<int>& pool) {
  int best = pool.front();
  for (int a : pool) {
    if (model.at(a).id < model.at(best).id) best = a;
  }
  return best;
}

}  // namespace

int find_ctor(const CodeModel& model, int entry_idx, std::size_t argc) {
  const auto& ctors = model.types[static_cast<std::size_t>(entry_idx)].ctors;
  if (ctors.empty()) return -1;
  std::vector<int> exact;
  for (int c : ctors) {
    if (params_of(model, c).size() == argc) exact.push_back(c);
  }
  if (!exact.empty()) return lexically_first(model, exact);
  std::vector<int> variadic;
  for (int c : ctors) {
    if (varargs_accepts(params_of(model, c), argc)) variadic.push_back(c);
  }
  if (!variadic.empty()) return lexically_first(model, variadic);
  if (ctors.size() == 1) return ctors.front();
  return -1;
}

int find_method(const CodeModel& model, int entry_idx, const std::string& name,
                const std::vector<int>& arg_entries, Diagnostics* diags, const std::string& file,
                int line) {
  std::vector<int> cands;
  for (int t : collect_hierarchy(model, entry_idx)) {
    const auto& methods = model.types[static_cast<std::size_t>(t)].methods;
    auto it = methods.find(name);
    if (it != methods.end()) cands.insert(cands.end(), it->second.begin(), it->second.end());
  }
  if (cands.empty()) return -1;

  std::size_t argc = arg_entries.size();
  std::vector<int> pool;
  for (int a : cands) {
    if (params_of(model, a).size() == argc) pool.push_back(a);
  }
  if (pool.empty()) {
    for (int a : cands) {
      if (varargs_accepts(params_of(model, a), argc)) pool.push_back(a);
    }
  }
  if (pool.empty()) return cands.size() == 1 ? cands.front() : -1;
  if (pool.size() == 1) return pool.front();

  // Same-arity overloads: prefer the candidate whose declared parameter types
  // agree with the arguments' resolved classes.
  int best_score = -1;
  std::vector<int> best;
  for (int a : pool) {
    const auto& ps = params_of(model, a);
    int ctx = model.type_entry_of[static_cast<std::size_t>(model.at(a).declaring)];
    const ast::CompilationUnit* unit =
        ctx >= 0 ? model.types[static_cast<std::size_t>(ctx)].unit : nullptr;
    int score = 0;
    for (std::size_t i = 0; i < std::min(argc, ps.size()); ++i) {
      if (arg_entries[i] < 0) continue;
      if (resolve_type(model, ps[i].type, ctx, unit) == arg_entries[i]) ++score;
    }
    if (score > best_score) {
      best_score = score;
      best.assign(1, a);
    } else if (score == best_score) {
      best.push_back(a);
    }
  }
  int chosen = lexically_first(model, best);
  if (best.size() > 1 && diags) {
    diags->note("ambiguous-call", file, line,
                "ambiguous call to " + name + "; bound to " + model.at(chosen).id);
  }
  return chosen;
}

namespace {

// Static type of an expression, as far as the corpus can tell.
struct TRef {
  int entry = -1;        // TypeEntry index, -1 = out of corpus / primitive / unknown
  int dims = 0;          // array depth
  bool type_use = false; // the expression names a type, not a value
  bool known() const { return entry >= 0; }
};

class BodyWalker {
 public:
  BodyWalker(const CodeModel& model, int source_artifact, Diagnostics& diags)
      : model_(model), diags_(diags), src_(source_artifact) {
    int cls = model_.class_of(src_);
    self_entry_ = cls >= 0 ? model_.type_entry_of[static_cast<std::size_t>(cls)] : -1;
    if (self_entry_ >= 0) unit_ = model_.types[static_cast<std::size_t>(self_entry_)].unit;
    file_ = model_.at(src_).file;
  }

  BodyFacts run() {
    const Artifact& a = model_.at(src_);
    push_scope();
    if (a.is_callable() && a.method_decl) {
      const ast::MethodDecl& md = *a.method_decl;
      if (md.is_compact_ctor && self_entry_ >= 0) {
        for (const auto& comp :
             model_.types[static_cast<std::size_t>(self_entry_)].decl->record_components) {
          declare(comp.name, resolve_ref(comp.type));
        }
      }
      for (const auto& p : md.params) declare(p.name, resolve_ref(p.type));
      if (md.body) walk_stmt(*md.body);
    } else if (a.kind == ArtifactKind::Field) {
      if (a.field_decl) {
        const auto& var = a.field_decl->declarators[static_cast<std::size_t>(a.declarator_index)];
        if (var.init) walk_expr(var.init.get());
      } else if (a.enum_constant) {
        const ast::EnumConstant& c = *a.enum_constant;
        for (const auto& arg : c.args) walk_expr(arg.get());
        if (self_entry_ >= 0) {
          // An enum constant invokes its enum's constructor but creates no
          // separate class; there is deliberately no Create event here.
          int ct = find_ctor(model_, self_entry_, c.args.size());
          if (ct >= 0) event(RefEvent::Kind::Call, ct, c.line, c.col);
        }
        walk_members(c.body_members);
      }
    }
    pop_scope();
    return std::move(facts_);
  }

 private:
  // ---- scope -------------------------------------------------------------

  void push_scope() { scopes_.emplace_back(); }
  void pop_scope() { scopes_.pop_back(); }
  void declare(const std::string& name, TRef t) {
    if (!name.empty() && name != "this") scopes_.back()[name] = t;
  }
  const TRef* lookup_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  void event(RefEvent::Kind k, int target, int line, int col) {
    facts_.events.push_back({k, target, line, col});
  }

  int type_artifact(int entry) const {
    return model_.types[static_cast<std::size_t>(entry)].artifact;
  }
  int superclass_of(int entry) const {
    return entry >= 0 ? model_.types[static_cast<std::size_t>(entry)].superclass : -1;
  }

  TRef resolve_ref(const ast::TypeRef& r) const {
    return TRef{resolve_type(model_, r, self_entry_, unit_), r.dims, false};
  }

  // ---- typing helpers ----------------------------------------------------

  TRef field_type(int field_artifact) const {
    const Artifact& a = model_.at(field_artifact);
    int ctx = model_.type_entry_of[static_cast<std::size_t>(a.declaring)];
    const ast::CompilationUnit* unit =
        ctx >= 0 ? model_.types[static_cast<std::size_t>(ctx)].unit : nullptr;
    if (a.enum_constant) return TRef{ctx, 0, false};
    if (a.record_component) {
      return TRef{resolve_type(model_, a.record_component->type, ctx, unit),
                  a.record_component->type.dims, false};
    }
    if (a.field_decl) {
      const ast::TypeRef& tr = a.field_decl->type;
      int extra =
          a.field_decl->declarators[static_cast<std::size_t>(a.declarator_index)].extra_dims;
      return TRef{resolve_type(model_, tr, ctx, unit), tr.dims + extra, false};
    }
    return {};
  }

  TRef method_return_type(int method_artifact) const {
    const Artifact& a = model_.at(method_artifact);
    if (a.kind == ArtifactKind::Constructor || !a.method_decl) return {};
    int ctx = model_.type_entry_of[static_cast<std::size_t>(a.declaring)];
    const ast::CompilationUnit* unit =
        ctx >= 0 ? model_.types[static_cast<std::size_t>(ctx)].unit : nullptr;
    const ast::TypeRef& rt = a.method_decl->return_type;
    return TRef{resolve_type(model_, rt, ctx, unit), rt.dims, false};
  }

  // Is this bare name a value (local, parameter, or field) in scope? Used to
  // keep value names from being misread as type qualifiers.
  bool names_value(const std::string& name) const {
    if (lookup_local(name)) return true;
    for (int t = self_entry_; t >= 0; t = model_.types[static_cast<std::size_t>(t)].enclosing) {
      if (find_field(model_, t, name) >= 0) return true;
    }
    return false;
  }

  static bool flatten_names(const ast::Expr* e, std::vector<std::string>& out) {
    if (!e) return false;
    if (e->kind == ast::Expr::Kind::Name) {
      out.push_back(e->name);
      return true;
    }
    if (e->kind == ast::Expr::Kind::FieldAccess) {
      if (!flatten_names(e->lhs.get(), out)) return false;
      out.push_back(e->name);
      return true;
    }
    return false;
  }

  // Reinterprets an undecipherable receiver as a (possibly qualified) type
  // name: the static-member side of Java's ambiguous a.b.c grammar.
  TRef type_from_chain(const ast::Expr* e) const {
    std::vector<std::string> parts;
    if (!flatten_names(e, parts) || parts.empty()) return {};
    if (names_value(parts.front())) return {};
    ast::TypeRef r;
    r.parts = std::move(parts);
    int ent = resolve_type(model_, r, self_entry_, unit_);
    return TRef{ent, 0, true};
  }

  int static_import_field(const std::string& name) const {
    if (!unit_) return -1;
    for (const auto& imp : unit_->imports) {
      if (!imp.is_static || imp.parts.empty()) continue;
      std::vector<std::string> owner = imp.parts;
      if (!imp.on_demand) {
        if (owner.back() != name) continue;
        owner.pop_back();
      }
      ast::TypeRef r;
      r.parts = std::move(owner);
      int ent = resolve_type(model_, r, -1, unit_);
      if (ent < 0) continue;
      int f = find_field(model_, ent, name);
      if (f >= 0) return f;
    }
    return -1;
  }

  int static_import_method(const std::string& name, const std::vector<int>& arg_entries,
                           int line) const {
    if (!unit_) return -1;
    for (const auto& imp : unit_->imports) {
      if (!imp.is_static || imp.parts.empty()) continue;
      std::vector<std::string> owner = imp.parts;
      if (!imp.on_demand) {
        if (owner.back() != name) continue;
        owner.pop_back();
      }
      ast::TypeRef r;
      r.parts = std::move(owner);
      int ent = resolve_type(model_, r, -1, unit_);
      if (ent < 0) continue;
      int m = find_method(model_, ent, name, arg_entries, &diags_, file_, line);
      if (m >= 0) return m;
    }
    return -1;
  }

  // ---- members of local and anonymous types -------------------------------
  // These declare no artifacts; their bodies are charged to this source.

  void walk_members(const std::vector<std::unique_ptr<ast::Member>>& members) {
    for (const auto& m : members) {
      switch (m->kind) {
        case ast::Member::Kind::Field:
          for (const auto& d : m->field->declarators) {
            if (d.init) walk_expr(d.init.get());
          }
          break;
        case ast::Member::Kind::Method: {
          push_scope();
          for (const auto& p : m->method->params) declare(p.name, resolve_ref(p.type));
          if (m->method->body) walk_stmt(*m->method->body);
          pop_scope();
          break;
        }
        case ast::Member::Kind::Init:
          if (m->init->body) walk_stmt(*m->init->body);
          break;
        case ast::Member::Kind::Type:
          walk_members(m->type->members);
          break;
      }
    }
  }

  // ---- statements ----------------------------------------------------------

  void walk_stmt(const ast::Stmt& s) {
    using K = ast::Stmt::Kind;
    switch (s.kind) {
      case K::Block:
        push_scope();
        for (const auto& st : s.stmts) walk_stmt(*st);
        pop_scope();
        break;
      case K::If:
        walk_expr(s.expr.get());
        if (s.body) walk_stmt(*s.body);
        if (s.else_body) walk_stmt(*s.else_body);
        break;
      case K::While:
        walk_expr(s.expr.get());
        if (s.body) walk_stmt(*s.body);
        break;
      case K::DoWhile:
        if (s.body) walk_stmt(*s.body);
        walk_expr(s.expr.get());
        break;
      case K::ForClassic:
        push_scope();
        for (const auto& st : s.stmts) walk_stmt(*st);
        if (s.expr) walk_expr(s.expr.get());
        for (const auto& u : s.update_exprs) walk_expr(u.get());
        if (s.body) walk_stmt(*s.body);
        pop_scope();
        break;
      case K::ForEach:
        walk_foreach(s);
        break;
      case K::Switch:
        walk_switch(s);
        break;
      case K::Try:
        walk_try(s);
        break;
      case K::Return:
      case K::Yield:
        if (s.expr) walk_expr(s.expr.get());
        break;
      case K::Throw: {
        TRef t = walk_expr(s.expr.get());
        if (t.known() && t.dims == 0) {
          event(RefEvent::Kind::ThrowStmt, type_artifact(t.entry), s.line, s.col);
        }
        break;
      }
      case K::ExprStmt:
        walk_expr(s.expr.get());
        break;
      case K::LocalVar:
        walk_local_var(s);
        break;
      case K::LocalType:
        if (s.local_type) walk_members(s.local_type->members);
        break;
      case K::Labeled:
        if (s.body) walk_stmt(*s.body);
        break;
      case K::Synchronized:
        if (s.expr) walk_expr(s.expr.get());
        if (s.body) walk_stmt(*s.body);
        break;
      case K::Assert:
        if (s.expr) walk_expr(s.expr.get());
        if (s.expr2) walk_expr(s.expr2.get());
        break;
      case K::Break:
      case K::Continue:
      case K::Empty:
        break;
    }
  }

  void walk_local_var(const ast::Stmt& s) {
    TRef declared;
    if (!s.infer_type) declared = resolve_ref(s.var_type);
    for (const auto& d : s.declarators) {
      TRef init_t;
      if (d.init) {
        init_t = walk_expr(d.init.get());
        facts_.vars_accessed.insert(d.name);
      }
      TRef t = s.infer_type ? init_t : TRef{declared.entry, declared.dims + d.extra_dims, false};
      if (t.known() && !t.type_use) {
        event(RefEvent::Kind::LocalDecl, type_artifact(t.entry), d.line, d.col);
      }
      declare(d.name, t);
    }
  }

  void walk_foreach(const ast::Stmt& s) {
    push_scope();
    TRef seq = walk_expr(s.expr.get());
    TRef t;
    if (!s.infer_type) {
      t = resolve_ref(s.var_type);
    } else if (seq.dims > 0) {
      t = TRef{seq.entry, seq.dims - 1, false};
    }
    if (t.known()) event(RefEvent::Kind::LocalDecl, type_artifact(t.entry), s.line, s.col);
    declare(s.name, t);
    facts_.vars_accessed.insert(s.name);
    if (s.body) walk_stmt(*s.body);
    pop_scope();
  }

  void walk_switch(const ast::Stmt& s) {
    TRef sel = walk_expr(s.expr.get());
    for (const auto& c : s.cases) {
      push_scope();
      for (const auto& le : c.label_exprs) {
        // Bare names over an enum selector are that enum's constants.
        if (sel.known() && sel.dims == 0 && le->kind == ast::Expr::Kind::Name) {
          int f = find_field(model_, sel.entry, le->name);
          if (f >= 0) {
            event(RefEvent::Kind::FieldRead, f, le->line, le->col);
            continue;
          }
        }
        walk_expr(le.get());
      }
      for (const auto& [tr, nm] : c.label_patterns) {
        TRef t = resolve_ref(tr);
        if (t.known()) event(RefEvent::Kind::LocalDecl, type_artifact(t.entry), tr.line, tr.col);
        if (!nm.empty()) {
          declare(nm, t);
          facts_.vars_accessed.insert(nm);
        }
      }
      if (c.guard) walk_expr(c.guard.get());
      for (const auto& st : c.body) walk_stmt(*st);
      pop_scope();
    }
  }

  void walk_try(const ast::Stmt& s) {
    push_scope();
    for (const auto& r : s.stmts) walk_stmt(*r);
    if (s.body) walk_stmt(*s.body);
    pop_scope();
    for (const auto& c : s.catches) {
      push_scope();
      TRef bound;
      for (const auto& tr : c.types) {
        TRef t = resolve_ref(tr);
        if (t.known()) {
          event(RefEvent::Kind::LocalDecl, type_artifact(t.entry), c.line, c.col);
          if (!bound.known()) bound = t;
        }
      }
      declare(c.var, bound);
      facts_.vars_accessed.insert(c.var);
      if (c.block) walk_stmt(*c.block);
      pop_scope();
    }
    if (s.finally_body) walk_stmt(*s.finally_body);
  }

  // ---- expressions ---------------------------------------------------------

  TRef walk_expr(const ast::Expr* e, bool lvalue = false) {
    if (!e) return {};
    using K = ast::Expr::Kind;
    switch (e->kind) {
      case K::Literal:
        return {};
      case K::Name:
        return walk_name(*e, lvalue);
      case K::This:
        if (!e->type_ref.empty()) return TRef{resolve_ref(e->type_ref).entry, 0, false};
        return TRef{self_entry_, 0, false};
      case K::Super:
        return TRef{superclass_of(self_entry_), 0, false};
      case K::FieldAccess:
        return walk_field_access(*e, lvalue);
      case K::MethodCall:
        return walk_call(*e);
      case K::ObjectCreation:
        return walk_creation(*e);
      case K::ArrayCreation: {
        TRef elem = resolve_ref(e->type_ref);
        for (const auto& a : e->args) walk_expr(a.get());
        if (e->lhs) walk_expr(e->lhs.get());
        return TRef{elem.entry, e->type_ref.dims, false};
      }
      case K::ArrayAccess: {
        TRef base = walk_expr(e->lhs.get());
        walk_expr(e->rhs.get());
        if (base.dims > 0) return TRef{base.entry, base.dims - 1, false};
        return {};
      }
      case K::ArrayInit:
        for (const auto& a : e->args) walk_expr(a.get());
        return {};
      case K::Cast: {
        TRef operand = walk_expr(e->lhs.get());
        TRef target = resolve_ref(e->type_ref);
        if (target.known()) {
          event(RefEvent::Kind::Cast, type_artifact(target.entry), e->line, e->col);
          return TRef{target.entry, e->type_ref.dims, false};
        }
        return e->type_ref.primitive ? TRef{} : operand;
      }
      case K::InstanceOf: {
        walk_expr(e->lhs.get());
        TRef t = resolve_ref(e->type_ref);
        if (!e->name.empty()) {
          if (t.known()) {
            event(RefEvent::Kind::LocalDecl, type_artifact(t.entry), e->line, e->col);
          }
          declare(e->name, t);
          facts_.vars_accessed.insert(e->name);
        }
        return {};
      }
      case K::ClassLiteral:
        return {};
      case K::Unary: {
        bool writes = e->name == "++" || e->name == "--" || e->name == "post++" ||
                      e->name == "post--";
        walk_expr(e->lhs.get(), writes);
        return {};
      }
      case K::Binary:
        walk_expr(e->lhs.get());
        walk_expr(e->rhs.get());
        return {};
      case K::Ternary: {
        walk_expr(e->lhs.get());
        TRef a = walk_expr(e->rhs.get());
        TRef b = walk_expr(e->third.get());
        return a.known() ? a : b;
      }
      case K::Assign: {
        TRef target = walk_expr(e->lhs.get(), true);
        walk_expr(e->rhs.get());
        return target;
      }
      case K::Lambda: {
        push_scope();
        for (const auto& p : e->params) {
          declare(p.name, p.type.empty() ? TRef{} : resolve_ref(p.type));
        }
        if (e->lhs) walk_expr(e->lhs.get());
        if (e->body) walk_stmt(*e->body);
        pop_scope();
        return {};
      }
      case K::MethodRef:
        return walk_method_ref(*e);
      case K::SwitchExpr:
        if (e->body) walk_stmt(*e->body);
        return {};
    }
    return {};
  }

  TRef walk_name(const ast::Expr& e, bool lvalue) {
    if (const TRef* local = lookup_local(e.name)) {
      facts_.vars_accessed.insert(e.name);
      return *local;
    }
    for (int t = self_entry_; t >= 0; t = model_.types[static_cast<std::size_t>(t)].enclosing) {
      int f = find_field(model_, t, e.name);
      if (f >= 0) {
        event(lvalue ? RefEvent::Kind::FieldWrite : RefEvent::Kind::FieldRead, f, e.line, e.col);
        return field_type(f);
      }
    }
    {
      int f = static_import_field(e.name);
      if (f >= 0) {
        event(lvalue ? RefEvent::Kind::FieldWrite : RefEvent::Kind::FieldRead, f, e.line, e.col);
        return field_type(f);
      }
    }
    ast::TypeRef r;
    r.parts = {e.name};
    int ent = resolve_type(model_, r, self_entry_, unit_);
    if (ent >= 0) return TRef{ent, 0, true};
    return {};
  }

  TRef walk_field_access(const ast::Expr& e, bool lvalue) {
    TRef recv = walk_expr(e.lhs.get());
    if (!recv.known()) {
      TRef as_type = type_from_chain(e.lhs.get());
      if (as_type.known()) recv = as_type;
    }
    if (recv.known() && recv.dims == 0) {
      int f = find_field(model_, recv.entry, e.name);
      if (f >= 0) {
        event(lvalue ? RefEvent::Kind::FieldWrite : RefEvent::Kind::FieldRead, f, e.line, e.col);
        return field_type(f);
      }
      if (recv.type_use) {
        // Outer.Inner.MEMBER: the middle link is a nested type, not a field.
        int n = find_nested_in_hierarchy(model_, recv.entry, e.name);
        if (n >= 0) return TRef{n, 0, true};
      }
    }
    return {};
  }

  TRef walk_call(const ast::Expr& e) {
    if (!e.lhs && (e.name == "this" || e.name == "super")) {
      std::size_t argc = e.args.size();
      for (const auto& a : e.args) walk_expr(a.get());
      int target = e.name == "this" ? self_entry_ : superclass_of(self_entry_);
      if (target >= 0) {
        int c = find_ctor(model_, target, argc);
        if (c >= 0) event(RefEvent::Kind::Call, c, e.line, e.col);
      }
      return {};
    }
    TRef recv;
    if (e.lhs) {
      recv = walk_expr(e.lhs.get());
      if (!recv.known()) {
        TRef as_type = type_from_chain(e.lhs.get());
        if (as_type.known()) recv = as_type;
      }
    }
    std::vector<int> arg_entries;
    arg_entries.reserve(e.args.size());
    for (const auto& a : e.args) {
      TRef t = walk_expr(a.get());
      arg_entries.push_back(t.dims == 0 && !t.type_use ? t.entry : -1);
    }
    int m = -1;
    if (e.lhs) {
      if (recv.known() && recv.dims == 0) {
        m = find_method(model_, recv.entry, e.name, arg_entries, &diags_, file_, e.line);
      }
    } else {
      for (int t = self_entry_; t >= 0 && m < 0;
           t = model_.types[static_cast<std::size_t>(t)].enclosing) {
        m = find_method(model_, t, e.name, arg_entries, &diags_, file_, e.line);
      }
      if (m < 0) m = static_import_method(e.name, arg_entries, e.line);
    }
    if (m >= 0) {
      event(RefEvent::Kind::Call, m, e.line, e.col);
      return method_return_type(m);
    }
    return {};
  }

  TRef walk_creation(const ast::Expr& e) {
    int ent = -1;
    if (e.lhs) {
      // receiver.new Inner(...): the inner name lives in the receiver's type.
      TRef recv = walk_expr(e.lhs.get());
      if (recv.known() && e.type_ref.parts.size() == 1) {
        ent = find_nested_in_hierarchy(model_, recv.entry, e.type_ref.parts[0]);
      }
    } else {
      ent = resolve_type(model_, e.type_ref, self_entry_, unit_);
    }
    for (const auto& a : e.args) walk_expr(a.get());
    if (ent >= 0 && model_.at(type_artifact(ent)).kind == ArtifactKind::Class) {
      event(RefEvent::Kind::Create, type_artifact(ent), e.line, e.col);
      int c = find_ctor(model_, ent, e.args.size());
      if (c >= 0) event(RefEvent::Kind::Call, c, e.line, e.col);
    }
    walk_members(e.anon_members);
    return TRef{ent, 0, false};
  }

  TRef walk_method_ref(const ast::Expr& e) {
    TRef recv = walk_expr(e.lhs.get());
    if (!recv.known()) {
      TRef as_type = type_from_chain(e.lhs.get());
      if (as_type.known()) recv = as_type;
    }
    if (!recv.known() || recv.dims != 0) return {};
    if (e.name == "new") {
      const auto& ctors = model_.types[static_cast<std::size_t>(recv.entry)].ctors;
      if (ctors.size() == 1) event(RefEvent::Kind::Call, ctors.front(), e.line, e.col);
      return {};
    }
    std::vector<int> named;
    for (int t : collect_hierarchy(model_, recv.entry)) {
      const auto& methods = model_.types[static_cast<std::size_t>(t)].methods;
      auto it = methods.find(e.name);
      if (it != methods.end()) named.insert(named.end(), it->second.begin(), it->second.end());
    }
    if (named.size() == 1) {
      event(RefEvent::Kind::Call, named.front(), e.line, e.col);
    } else if (named.size() > 1) {
      diags_.note("ambiguous-method-ref", file_, e.line,
                  "method reference ::" + e.name + " matches several overloads; skipped");
    }
    return {};
  }

  const CodeModel& model_;
  Diagnostics& diags_;
  int src_;
  int self_entry_ = -1;
  const ast::CompilationUnit* unit_ = nullptr;
  std::string file_;
  BodyFacts facts_;
  std::vector<std::map<std::string, TRef>> scopes_;
};

}  // namespace

BodyFacts analyze_body(const CodeModel& model, int artifact_idx, Diagnostics& diags) {
  if (model.at(artifact_idx).is_type()) return {};
  BodyWalker walker(model, artifact_idx, diags);
  return walker.run();
}

std::vector<BodyFacts> collect_body_facts(const CodeModel& model, Diagnostics& diags) {
  std::vector<BodyFacts> out(model.artifacts.size());
  for (std::size_t i = 0; i < model.artifacts.size(); ++i) {
    out[i] = analyze_body(model, static_cast<int>(i), diags);
  }
  return out;
}

}  // namespace smelldep::model
