#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace smelldep::model::ast {

// The tree keeps exactly what downstream passes consume: declaration shape
// for artifact identity and physical-LOC spans, statement structure for
// complexity/nesting, and expressions detailed enough to type receivers and
// spot field/method references. Generic type arguments are parsed for
// balance and then dropped; annotations are skipped entirely.

struct Stmt;
struct Expr;
struct TypeDecl;
struct Member;
using StmtPtr = std::unique_ptr<Stmt>;
using ExprPtr = std::unique_ptr<Expr>;

// One syntactic type usage, erased: dotted name without type arguments plus
// array depth. "boolean[]" => parts={"boolean"}, primitive=true, dims=1.
struct TypeRef {
  std::vector<std::string> parts;
  int dims = 0;
  bool primitive = false;  // includes void
  int line = 0, col = 0;

  bool empty() const { return parts.empty(); }
  std::string dotted() const {
    std::string s;
    for (const auto& p : parts) {
      if (!s.empty()) s.push_back('.');
      s += p;
    }
    return s;
  }
};

struct Param {
  TypeRef type;
  std::string name;
  int line = 0, col = 0;
};

struct Expr {
  enum class Kind {
    Literal,        // text holds the raw literal; name holds a tag: int/float/char/string/bool/null
    Name,           // unqualified identifier reference
    This,           // this / Outer.this (qualifier in type_ref if present)
    Super,          // bare super (only as a receiver or super(...) target)
    FieldAccess,    // lhs . name
    MethodCall,     // [lhs .] name (args) ; name "this"/"super" = explicit ctor invocation
    ObjectCreation, // new type_ref (args) [anon_members]
    ArrayCreation,  // new type_ref [args...] or new type_ref[]{init in lhs}
    ArrayAccess,    // lhs [ rhs ]
    ArrayInit,      // { args... }
    Cast,           // ( type_ref ) lhs
    InstanceOf,     // lhs instanceof type_ref [name = pattern binding]
    ClassLiteral,   // type_ref . class
    Unary,          // name = operator; lhs = operand; "post++"/"post--" for postfix
    Binary,         // name = operator; lhs, rhs
    Ternary,        // lhs ? rhs : third
    Assign,         // name = operator ("=", "+=", ...); lhs, rhs
    Lambda,         // params -> (lhs expr | body block)
    MethodRef,      // (lhs | type_ref) :: name   ("new" for constructor refs)
    SwitchExpr,     // switch (lhs) { cases }  — cases stored on the carrier stmt in `body`
  };

  Kind kind;
  int line = 0, col = 0;
  std::string name;
  std::string text;  // literals only
  ExprPtr lhs, rhs, third;
  std::vector<ExprPtr> args;
  TypeRef type_ref;
  std::vector<Param> params;                   // lambda parameters (types optional)
  StmtPtr body;                                // lambda block body / switch-expr carrier
  std::vector<std::unique_ptr<Member>> anon_members;  // anonymous class body

  explicit Expr(Kind k) : kind(k) {}
};

struct VarDeclarator {
  std::string name;
  int extra_dims = 0;  // trailing "[]" on the declarator itself
  ExprPtr init;
  int line = 0, col = 0;
};

struct SwitchCase {
  // Each label is either an expression or a type pattern ("case Foo f").
  std::vector<ExprPtr> label_exprs;
  std::vector<std::pair<TypeRef, std::string>> label_patterns;
  bool is_default = false;
  bool arrow = false;
  ExprPtr guard;                // "when" clause
  std::vector<StmtPtr> body;    // arrow expr bodies are wrapped as statements
};

struct CatchClause {
  std::vector<TypeRef> types;  // multi-catch alternatives
  std::string var;
  int line = 0, col = 0;
  StmtPtr block;
};

struct Stmt {
  enum class Kind {
    Block,
    If,            // expr cond, body, else_body
    While,         // expr cond, body
    DoWhile,       // body, expr cond
    ForClassic,    // init_stmts ; expr cond ; update_exprs ; body
    ForEach,       // var_type name : expr, body
    Switch,        // expr selector, cases
    Try,           // resource_stmts, body, catches, finally_body
    Return,        // expr?
    Throw,         // expr
    Yield,         // expr
    ExprStmt,      // expr
    LocalVar,      // var_type, declarators
    LocalType,     // local_type
    Break,
    Continue,
    Labeled,       // name, body
    Synchronized,  // expr, body
    Assert,        // expr [, rhs_expr message]
    Empty,
  };

  Kind kind;
  int line = 0, col = 0;
  ExprPtr expr, expr2;
  StmtPtr body, else_body, finally_body;
  std::vector<StmtPtr> stmts;        // Block body; ForClassic inits; Try resources
  std::vector<ExprPtr> update_exprs; // ForClassic updates
  TypeRef var_type;
  bool infer_type = false;  // 'var'
  std::vector<VarDeclarator> declarators;
  std::vector<SwitchCase> cases;
  std::vector<CatchClause> catches;
  std::string name;  // label name / labeled break/continue target
  std::unique_ptr<TypeDecl> local_type;

  explicit Stmt(Kind k) : kind(k) {}
};

struct Modifiers {
  bool is_public = false, is_protected = false, is_private = false;
  bool is_static = false, is_final = false, is_abstract = false;
  bool is_default = false;  // interface default method
};

struct MethodDecl {
  std::string name;
  bool is_ctor = false;
  bool is_compact_ctor = false;  // record compact constructor
  Modifiers mods;
  TypeRef return_type;  // empty for constructors
  std::vector<Param> params;
  std::vector<TypeRef> throws_types;
  StmtPtr body;  // null for abstract/native/interface-abstract methods
  int start_line = 0, end_line = 0, col = 0;
};

struct FieldDecl {
  Modifiers mods;
  TypeRef type;
  std::vector<VarDeclarator> declarators;
  int start_line = 0, end_line = 0;
};

struct EnumConstant {
  std::string name;
  std::vector<ExprPtr> args;
  std::vector<std::unique_ptr<Member>> body_members;
  int line = 0, col = 0;
};

struct InitBlock {
  bool is_static = false;
  StmtPtr body;
  int start_line = 0, end_line = 0;
};

struct Member {
  enum class Kind { Field, Method, Type, Init };
  Kind kind;
  std::unique_ptr<FieldDecl> field;
  std::unique_ptr<MethodDecl> method;
  std::unique_ptr<TypeDecl> type;
  std::unique_ptr<InitBlock> init;
};

struct TypeDecl {
  enum class Kind { Class, Interface, Enum, Record, Annotation };
  Kind kind = Kind::Class;
  std::string name;
  Modifiers mods;
  std::vector<std::string> type_params;
  TypeRef extends_type;                // classes: superclass
  std::vector<TypeRef> extends_types;  // interfaces: superinterfaces
  std::vector<TypeRef> implements_types;
  std::vector<Param> record_components;
  std::vector<EnumConstant> enum_constants;
  std::vector<std::unique_ptr<Member>> members;
  int start_line = 0, end_line = 0, col = 0;
};

struct Import {
  std::vector<std::string> parts;
  bool on_demand = false;  // trailing ".*"
  bool is_static = false;
};

struct CompilationUnit {
  std::string package;  // dotted, empty for default package
  std::vector<Import> imports;
  std::vector<std::unique_ptr<TypeDecl>> types;
  std::string file;                 // project-relative path
  std::vector<bool> line_has_code;  // from the lexer, for LOC
};

}  // namespace smelldep::model::ast
