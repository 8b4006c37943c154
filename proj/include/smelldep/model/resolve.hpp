#pragma once

#include <set>
#include <string>
#include <vector>

#include "smelldep/model/code_model.hpp"

namespace smelldep::model {

// One resolved reference found in a body. Targets are artifact indices;
// only in-corpus resolutions are recorded (external references vanish).
struct RefEvent {
  enum class Kind {
    Call,       // invokes an FM, accessor, or constructor (incl. this()/super()/new Foo())
    Create,     // `new` on an in-corpus class
    LocalDecl,  // declares a local variable (incl. for-each, resources, catch, patterns)
    Cast,       // cast expression to a class type
    FieldRead,
    FieldWrite,
    ThrowStmt,  // `throw` whose static type resolves in-corpus
  };
  Kind kind;
  int target = -1;
  int line = 0, col = 0;
};

struct BodyFacts {
  std::vector<RefEvent> events;
  // Locals and parameters this body actually reads or writes, by name.
  std::set<std::string> vars_accessed;
};

// Resolves a syntactic type reference against the lexical scope of
// `context_entry` (a TypeEntry index, or -1 for none) within `unit`.
// Array dimensions are ignored (arrays unwrap to their element type);
// primitives, type parameters, and out-of-corpus names yield -1.
int resolve_type(const CodeModel& model, const ast::TypeRef& ref, int context_entry,
                 const ast::CompilationUnit* unit);

// Fills TypeEntry::superclass / interfaces for every entry (in-corpus links
// only) and reports inheritance cycles as diagnostics, breaking them.
void link_hierarchy(CodeModel& model);

// Walks the body of a callable artifact, or the initializer (and, for enum
// constants, constructor arguments and constant body) of a field artifact.
// Lambdas, anonymous-class members, and local classes inside the body are
// attributed to this artifact. Safe to call for any artifact; non-sources
// (types) return empty facts.
BodyFacts analyze_body(const CodeModel& model, int artifact_idx, Diagnostics& diags);

// analyze_body for every artifact, indexed by artifact. Metrics and
// dependency extraction both read these; compute them once.
std::vector<BodyFacts> collect_body_facts(const CodeModel& model, Diagnostics& diags);

// Field lookup through the superclass chain; -1 when absent.
int find_field(const CodeModel& model, int entry_idx, const std::string& name);

// The entry plus its resolved supertypes, breadth-first (superclass before
// interfaces at each level). Defines "own" for foreign-data metrics: a field
// is own to a type when its declaring type appears in this list.
std::vector<int> hierarchy_of(const CodeModel& model, int entry_idx);

// Method lookup through superclasses and interfaces: candidates matching
// `name`, filtered by arity (with a varargs allowance), disambiguated by
// comparing resolvable parameter types against `arg_entries` (TypeEntry index
// per argument, -1 = unknown). Ambiguity binds to the lexically first
// candidate and is reported through `diags`.
int find_method(const CodeModel& model, int entry_idx, const std::string& name,
                const std::vector<int>& arg_entries, Diagnostics* diags, const std::string& file,
                int line);

// Constructor lookup on one type by arity; -1 when absent or ambiguous.
int find_ctor(const CodeModel& model, int entry_idx, std::size_t argc);

}  // namespace smelldep::model
