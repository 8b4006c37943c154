#pragma once

#include <string>

#include "smelldep/model/ast.hpp"

namespace smelldep::model {

// Leaf artifact kinds. Every declaration is exactly one of these; Accessor
// and FunctionalMethod partition methods, Constructor stands apart.
enum class ArtifactKind {
  Class,
  Interface,
  FunctionalMethod,
  Accessor,
  Constructor,
  Field,
};

const char* to_string(ArtifactKind kind);
bool artifact_kind_from_string(const std::string& s, ArtifactKind& out);

struct Artifact {
  // Project-scoped fully-qualified signature, e.g.:
  //   types      pkg.Outer.Inner
  //   fields     pkg.C#name
  //   methods    pkg.C#m(int,Foo)     constructors use <init>
  // A duplicate signature (invalid overload) gets a @L<line> suffix.
  std::string id;
  ArtifactKind kind = ArtifactKind::Class;
  std::string name;     // simple name
  int declaring = -1;   // artifact index of the declaring type; -1 for top-level types
  std::string file;
  int line = 0;         // declaration start
  int end_line = 0;     // closing brace / semicolon

  bool is_public = false;
  bool is_private = false;
  bool is_static = false;
  bool is_final = false;

  // Declaration handles for downstream passes (owned by the CodeModel's
  // compilation units). At most one family is set, matching `kind`.
  const ast::TypeDecl* type_decl = nullptr;
  const ast::MethodDecl* method_decl = nullptr;
  const ast::FieldDecl* field_decl = nullptr;
  int declarator_index = -1;                       // which declarator of field_decl
  const ast::EnumConstant* enum_constant = nullptr;
  const ast::Param* record_component = nullptr;

  // Accessors only: the field exposed, and whether it reads (getter) or
  // writes (setter).
  int backing_field = -1;
  bool is_getter = false;

  bool is_type() const { return kind == ArtifactKind::Class || kind == ArtifactKind::Interface; }
  bool is_callable() const {
    return kind == ArtifactKind::FunctionalMethod || kind == ArtifactKind::Accessor ||
           kind == ArtifactKind::Constructor;
  }
};

}  // namespace smelldep::model
