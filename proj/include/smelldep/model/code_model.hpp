#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "smelldep/model/artifact.hpp"
#include "smelldep/model/ast.hpp"
#include "smelldep/support/diag.hpp"

namespace smelldep::model {

// Resolution-side view of one declared type: symbol tables plus resolved
// in-corpus hierarchy links. Parallel array to the type artifacts.
struct TypeEntry {
  int artifact = -1;  // index into CodeModel::artifacts
  const ast::TypeDecl* decl = nullptr;
  const ast::CompilationUnit* unit = nullptr;
  std::string fqn;
  int enclosing = -1;    // TypeEntry index
  int superclass = -1;   // TypeEntry index, -1 when unresolved/absent
  std::vector<int> interfaces;  // TypeEntry indices (resolved only)
  std::map<std::string, int> fields;                // name -> artifact index
  std::map<std::string, std::vector<int>> methods;  // name -> artifact indices (FM/Accessor)
  std::vector<int> ctors;                           // artifact indices
  std::map<std::string, int> nested;                // simple name -> TypeEntry index
  std::vector<std::string> type_params;
};

struct CodeModel {
  std::string project_id;
  std::vector<std::unique_ptr<ast::CompilationUnit>> units;

  // Artifacts in deterministic construction order (sorted file walk); fact
  // emission sorts by id. Indices are stable and used everywhere internally.
  std::vector<Artifact> artifacts;
  std::map<std::string, int> artifact_by_id;

  // members[t] lists the member artifacts (fields, methods, constructors) of
  // the type artifact t; empty vector for non-types. Nested types are not
  // members — they stand alone for closure purposes.
  std::vector<std::vector<int>> members;

  std::vector<TypeEntry> types;
  std::map<std::string, int> type_by_fqn;
  std::vector<int> type_entry_of;  // artifact index -> TypeEntry index or -1

  // Aggregate counts over the retained production code.
  int total_types = 0;
  int total_methods = 0;
  int total_loc = 0;

  Diagnostics diagnostics;

  const Artifact& at(int idx) const { return artifacts[static_cast<std::size_t>(idx)]; }
  int find(const std::string& id) const {
    auto it = artifact_by_id.find(id);
    return it == artifact_by_id.end() ? -1 : it->second;
  }

  // The class/interface an artifact belongs to for relative-location
  // purposes: a type is its own class; a member's class is its declaring type.
  int class_of(int artifact_idx) const {
    const Artifact& a = at(artifact_idx);
    return a.is_type() ? artifact_idx : a.declaring;
  }

  // Walks declaring_type links upward; used by the acyclicity check and to
  // resolve lexical scope chains.
  int enclosing_type_entry(int type_entry_idx) const {
    return types[static_cast<std::size_t>(type_entry_idx)].enclosing;
  }
};

struct SourceFile {
  std::string path;  // project-relative, '/' separated
  std::string content;
};

// Parses the given production sources into a resolved CodeModel.
// Unparseable files are skipped and recorded in model.diagnostics
// (category "parse-error").
CodeModel build_code_model(std::string project_id, const std::vector<SourceFile>& sources);

// Accessor-vs-FunctionalMethod classification, purely syntactic: a getter is
// a single `return f;` / `return this.f;` of a field declared by the class;
// a setter is a single `f = p;` / `this.f = p;` storing the unique parameter.
// `own_field_names` supplies the declaring class's field names.
// Returns ArtifactKind::Accessor or ArtifactKind::FunctionalMethod and, for
// accessors, the backing field name and getter/setter flavor.
ArtifactKind classify_method(const ast::MethodDecl& method,
                             const std::map<std::string, int>& own_field_names,
                             std::string* backing_name = nullptr, bool* is_getter = nullptr);

}  // namespace smelldep::model
