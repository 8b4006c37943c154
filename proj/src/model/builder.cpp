#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "smelldep/model/code_model.hpp"
#include "smelldep/model/parser.hpp"
#include "smelldep/model/resolve.hpp"
#include "smelldep/model/token.hpp"

namespace smelldep::model {

const char* to_string(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::Class: return "Class";
    case ArtifactKind::Interface: return "Interface";
    case ArtifactKind::FunctionalMethod: return "FunctionalMethod";
    case ArtifactKind::Accessor: return "Accessor";
    case ArtifactKind::Constructor: return "Constructor";
    case ArtifactKind::Field: return "Field";
  }
  return "Class";
}

bool artifact_kind_from_string(const std::string& s, ArtifactKind& out) {
  static const std::pair<const char*, ArtifactKind> table[] = {
      {"Class", ArtifactKind::Class},
      {"Interface", ArtifactKind::Interface},
      {"FunctionalMethod", ArtifactKind::FunctionalMethod},
      {"Accessor", ArtifactKind::Accessor},
      {"Constructor", ArtifactKind::Constructor},
      {"Field", ArtifactKind::Field},
  };
  for (const auto& [name, kind] : table) {
    if (s == name) {
      out = kind;
      return true;
    }
  }
  return false;
}

namespace {

// Syntactic parameter type as it appears in an artifact id: dotted name (type
// arguments already erased) plus array suffixes. "int", "Foo", "java.util.List[]".
std::string type_text(const ast::TypeRef& t) {
  std::string s = t.dotted();
  for (int i = 0; i < t.dims; ++i) s += "[]";
  return s;
}

std::string method_signature(const ast::MethodDecl& m) {
  std::string s = m.is_ctor ? "<init>" : m.name;
  s += '(';
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    if (i) s += ',';
    s += type_text(m.params[i].type);
  }
  s += ')';
  return s;
}

// Peels `this.` off an accessor body reference; empty when the expression is
// not a plain own-field shape.
std::string plain_field_name(const ast::Expr* e) {
  if (!e) return {};
  if (e->kind == ast::Expr::Kind::Name) return e->name;
  if (e->kind == ast::Expr::Kind::FieldAccess && e->lhs &&
      e->lhs->kind == ast::Expr::Kind::This && e->lhs->type_ref.empty()) {
    return e->name;
  }
  return {};
}

class ModelBuilder {
 public:
  explicit ModelBuilder(std::string project_id) { model_.project_id = std::move(project_id); }

  void add_source(const SourceFile& src) {
    ParseOutcome out = parse_java(src.content, src.path);
    if (!out.unit) {
      if (out.errors.empty()) {
        model_.diagnostics.warning("parse-error", src.path, 0, "file could not be parsed");
      }
      for (const auto& e : out.errors) {
        model_.diagnostics.warning("parse-error", src.path, e.line, e.message);
      }
      return;
    }
    int last_line = static_cast<int>(out.unit->line_has_code.size()) - 1;
    model_.total_loc += count_code_lines(out.unit->line_has_code, 1, last_line);
    model_.units.push_back(std::move(out.unit));
  }

  CodeModel finish() {
    for (const auto& unit : model_.units) {
      for (const auto& t : unit->types) build_type(*t, unit.get(), -1);
    }
    link_hierarchy(model_);
    for (const auto& a : model_.artifacts) {
      if (a.is_type()) {
        ++model_.total_types;
      } else if (a.kind == ArtifactKind::FunctionalMethod || a.kind == ArtifactKind::Accessor) {
        ++model_.total_methods;
      }
    }
    return std::move(model_);
  }

 private:
  int add_artifact(Artifact a) {
    if (model_.artifact_by_id.count(a.id)) {
      // Invalid Java (duplicate signature) still gets a distinct identity so
      // downstream maps stay one-to-one.
      std::string alt = a.id + "@L" + std::to_string(a.line);
      int bump = 2;
      while (model_.artifact_by_id.count(alt)) {
        alt = a.id + "@L" + std::to_string(a.line) + "." + std::to_string(bump++);
      }
      model_.diagnostics.note("duplicate-signature", a.file, a.line,
                              "duplicate declaration of " + a.id);
      a.id = alt;
    }
    int idx = static_cast<int>(model_.artifacts.size());
    model_.artifact_by_id.emplace(a.id, idx);
    model_.artifacts.push_back(std::move(a));
    model_.members.emplace_back();
    model_.type_entry_of.push_back(-1);
    return idx;
  }

  int add_member(int type_entry_idx, Artifact a) {
    int idx = add_artifact(std::move(a));
    int type_artifact = model_.types[static_cast<std::size_t>(type_entry_idx)].artifact;
    model_.members[static_cast<std::size_t>(type_artifact)].push_back(idx);
    return idx;
  }

  void build_type(const ast::TypeDecl& decl, const ast::CompilationUnit* unit, int enclosing) {
    std::string fqn;
    if (enclosing >= 0) {
      fqn = model_.types[static_cast<std::size_t>(enclosing)].fqn + "." + decl.name;
    } else if (unit->package.empty()) {
      fqn = decl.name;
    } else {
      fqn = unit->package + "." + decl.name;
    }

    Artifact ta;
    ta.id = fqn;
    ta.kind = (decl.kind == ast::TypeDecl::Kind::Interface ||
               decl.kind == ast::TypeDecl::Kind::Annotation)
                  ? ArtifactKind::Interface
                  : ArtifactKind::Class;
    ta.name = decl.name;
    ta.declaring =
        enclosing >= 0 ? model_.types[static_cast<std::size_t>(enclosing)].artifact : -1;
    ta.file = unit->file;
    ta.line = decl.start_line;
    ta.end_line = decl.end_line;
    ta.is_public = decl.mods.is_public;
    ta.is_private = decl.mods.is_private;
    ta.is_final = decl.mods.is_final;
    // Member interfaces, enums, and records are implicitly static.
    ta.is_static = decl.mods.is_static ||
                   (enclosing >= 0 && decl.kind != ast::TypeDecl::Kind::Class);
    ta.type_decl = &decl;
    int type_artifact = add_artifact(std::move(ta));

    int entry_idx = static_cast<int>(model_.types.size());
    {
      TypeEntry entry;
      entry.artifact = type_artifact;
      entry.decl = &decl;
      entry.unit = unit;
      entry.fqn = fqn;
      entry.enclosing = enclosing;
      entry.type_params = decl.type_params;
      model_.types.push_back(std::move(entry));
    }
    model_.type_entry_of[static_cast<std::size_t>(type_artifact)] = entry_idx;
    if (!model_.type_by_fqn.emplace(fqn, entry_idx).second) {
      model_.diagnostics.note("duplicate-type", unit->file, decl.start_line,
                              "duplicate type name " + fqn);
    }
    if (enclosing >= 0) {
      model_.types[static_cast<std::size_t>(enclosing)].nested.emplace(decl.name, entry_idx);
    }

    bool iface_members = decl.kind == ast::TypeDecl::Kind::Interface ||
                         decl.kind == ast::TypeDecl::Kind::Annotation;

    // Fields first — accessor classification needs the complete field table.
    // Record components and enum constants are fields of the type.
    for (const auto& comp : decl.record_components) {
      Artifact fa;
      fa.id = fqn + "#" + comp.name;
      fa.kind = ArtifactKind::Field;
      fa.name = comp.name;
      fa.declaring = type_artifact;
      fa.file = unit->file;
      fa.line = comp.line;
      fa.end_line = comp.line;
      fa.is_private = true;
      fa.is_final = true;
      fa.record_component = &comp;
      int idx = add_member(entry_idx, std::move(fa));
      model_.types[static_cast<std::size_t>(entry_idx)].fields.emplace(comp.name, idx);
    }
    for (const auto& c : decl.enum_constants) {
      Artifact fa;
      fa.id = fqn + "#" + c.name;
      fa.kind = ArtifactKind::Field;
      fa.name = c.name;
      fa.declaring = type_artifact;
      fa.file = unit->file;
      fa.line = c.line;
      fa.end_line = c.line;
      fa.is_public = true;
      fa.is_static = true;
      fa.is_final = true;
      fa.enum_constant = &c;
      int idx = add_member(entry_idx, std::move(fa));
      model_.types[static_cast<std::size_t>(entry_idx)].fields.emplace(c.name, idx);
    }
    for (const auto& m : decl.members) {
      if (m->kind != ast::Member::Kind::Field) continue;
      const ast::FieldDecl& fd = *m->field;
      for (std::size_t d = 0; d < fd.declarators.size(); ++d) {
        const ast::VarDeclarator& var = fd.declarators[d];
        Artifact fa;
        fa.id = fqn + "#" + var.name;
        fa.kind = ArtifactKind::Field;
        fa.name = var.name;
        fa.declaring = type_artifact;
        fa.file = unit->file;
        fa.line = var.line;
        fa.end_line = fd.end_line;
        fa.is_public = fd.mods.is_public || iface_members;
        fa.is_private = fd.mods.is_private;
        fa.is_static = fd.mods.is_static || iface_members;
        fa.is_final = fd.mods.is_final || iface_members;
        fa.field_decl = &fd;
        fa.declarator_index = static_cast<int>(d);
        int idx = add_member(entry_idx, std::move(fa));
        model_.types[static_cast<std::size_t>(entry_idx)].fields.emplace(var.name, idx);
      }
    }

    for (const auto& m : decl.members) {
      if (m->kind != ast::Member::Kind::Method) continue;
      const ast::MethodDecl& md = *m->method;
      Artifact ma;
      ma.id = fqn + "#" + method_signature(md);
      ma.name = md.is_ctor ? "<init>" : md.name;
      ma.declaring = type_artifact;
      ma.file = unit->file;
      ma.line = md.start_line;
      ma.end_line = md.end_line;
      ma.is_public = md.mods.is_public || (iface_members && !md.mods.is_private);
      ma.is_private = md.mods.is_private;
      ma.is_static = md.mods.is_static;
      ma.is_final = md.mods.is_final;
      ma.method_decl = &md;
      if (md.is_ctor) {
        ma.kind = ArtifactKind::Constructor;
        int idx = add_member(entry_idx, std::move(ma));
        model_.types[static_cast<std::size_t>(entry_idx)].ctors.push_back(idx);
      } else {
        std::string backing;
        bool getter = false;
        ma.kind = classify_method(md, model_.types[static_cast<std::size_t>(entry_idx)].fields,
                                  &backing, &getter);
        if (ma.kind == ArtifactKind::Accessor) {
          ma.backing_field =
              model_.types[static_cast<std::size_t>(entry_idx)].fields.at(backing);
          ma.is_getter = getter;
        }
        int idx = add_member(entry_idx, std::move(ma));
        model_.types[static_cast<std::size_t>(entry_idx)].methods[md.name].push_back(idx);
      }
    }

    // Nested member types stand alone (not in the members list). Recursion
    // can reallocate model_.types, hence index-only access above.
    for (const auto& m : decl.members) {
      if (m->kind == ast::Member::Kind::Type) build_type(*m->type, unit, entry_idx);
    }
  }

  CodeModel model_;
};

}  // namespace

CodeModel build_code_model(std::string project_id, const std::vector<SourceFile>& sources) {
  ModelBuilder builder(std::move(project_id));
  for (const auto& src : sources) builder.add_source(src);
  return builder.finish();
}

ArtifactKind classify_method(const ast::MethodDecl& method,
                             const std::map<std::string, int>& own_field_names,
                             std::string* backing_name, bool* is_getter) {
  if (backing_name) backing_name->clear();
  if (is_getter) *is_getter = false;
  if (method.is_ctor || !method.body || method.body->stmts.size() != 1) {
    return ArtifactKind::FunctionalMethod;
  }
  const ast::Stmt& s = *method.body->stmts.front();

  if (s.kind == ast::Stmt::Kind::Return && s.expr && method.params.empty()) {
    std::string f = plain_field_name(s.expr.get());
    if (!f.empty() && own_field_names.count(f)) {
      if (backing_name) *backing_name = f;
      if (is_getter) *is_getter = true;
      return ArtifactKind::Accessor;
    }
  }

  if (s.kind == ast::Stmt::Kind::ExprStmt && s.expr &&
      s.expr->kind == ast::Expr::Kind::Assign && s.expr->name == "=" &&
      method.params.size() == 1) {
    const std::string& param = method.params.front().name;
    std::string f = plain_field_name(s.expr->lhs.get());
    // A bare name equal to the parameter is the parameter, not a field.
    bool shadows = s.expr->lhs->kind == ast::Expr::Kind::Name && f == param;
    if (!f.empty() && !shadows && own_field_names.count(f) && s.expr->rhs &&
        s.expr->rhs->kind == ast::Expr::Kind::Name && s.expr->rhs->name == param) {
      if (backing_name) *backing_name = f;
      return ArtifactKind::Accessor;
    }
  }

  return ArtifactKind::FunctionalMethod;
}

}  // namespace smelldep::model
