#include "smelldep/model/parser.hpp"

#include <cstring>
#include <stdexcept>

#include "smelldep/model/token.hpp"

namespace smelldep::model {

using namespace ast;

namespace {

struct ParseFail {
  std::string message;
  int line;
};

bool is_primitive_name(const std::string& s) {
  static const char* const prims[] = {"boolean", "byte", "short",  "int", "long",
                                      "float",   "char", "double", "void"};
  for (const char* p : prims)
    if (s == p) return true;
  return false;
}

bool is_modifier_word(const std::string& s) {
  static const char* const words[] = {"public",   "protected", "private",  "static",
                                      "final",    "abstract",  "synchronized", "native",
                                      "strictfp", "transient", "volatile", "default",
                                      "sealed"};
  for (const char* w : words)
    if (s == w) return true;
  return false;
}

// Words that can never begin a type name; guards speculative type parses from
// wandering into statements.
bool is_reserved_non_type(const std::string& s) {
  static const char* const words[] = {
      "if",     "else",   "while",   "do",       "for",     "switch", "case",   "default",
      "try",    "catch",  "finally", "return",   "throw",   "throws", "break",  "continue",
      "new",    "this",   "super",   "instanceof", "class", "interface", "enum", "extends",
      "implements", "import", "package", "assert", "synchronized", "true", "false", "null",
      "public", "protected", "private", "static", "final", "abstract", "native", "strictfp",
      "transient", "volatile",
  };
  for (const char* w : words)
    if (s == w) return true;
  return false;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file)
      : toks_(std::move(tokens)), file_(std::move(file)) {}

  std::unique_ptr<CompilationUnit> run() {
    auto unit = std::make_unique<CompilationUnit>();
    unit->file = file_;
    skip_annotations();
    if (at("package")) {
      next();
      unit->package = dotted_name();
      expect(";", "after package name");
    }
    while (at("import")) {
      next();
      Import imp;
      if (at("static")) {
        imp.is_static = true;
        next();
      }
      imp.parts.push_back(expect_ident("import name"));
      while (at_punct(".")) {
        next();
        if (at_punct("*")) {
          next();
          imp.on_demand = true;
          break;
        }
        imp.parts.push_back(expect_ident("import name"));
      }
      expect(";", "after import");
      unit->imports.push_back(std::move(imp));
    }
    while (!at_eof()) {
      if (at_punct(";")) {  // stray semicolons between declarations
        next();
        continue;
      }
      unit->types.push_back(parse_type_decl());
    }
    return unit;
  }

 private:
  // ---- token plumbing -------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k = 1) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_eof() const { return cur().kind == TokKind::Eof; }
  bool at(const char* s) const { return cur().text == s; }
  bool at_punct(const char* s) const { return cur().is_punct(s); }
  bool at_ident() const { return cur().kind == TokKind::Identifier; }
  void next() {
    if (!at_eof()) ++pos_;
  }
  bool accept(const char* s) {
    if (at(s)) {
      next();
      return true;
    }
    return false;
  }
  void expect(const char* s, const char* what) {
    if (!accept(s)) fail(std::string("expected '") + s + "' " + what);
  }
  std::string expect_ident(const char* what) {
    if (!at_ident()) fail(std::string("expected identifier (") + what + ")");
    std::string s = cur().text;
    next();
    return s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseFail{msg + ", got '" + cur().text + "'", cur().line};
  }

  std::size_t save() const { return pos_; }
  void restore(std::size_t p) { pos_ = p; }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > 400) throw ParseFail{"nesting too deep", p_.cur().line};
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  // True when toks_[i] and toks_[i+1] touch with no separating whitespace.
  bool adjacent(std::size_t i) const {
    return i + 1 < toks_.size() &&
           toks_[i + 1].offset == toks_[i].offset + toks_[i].text.size();
  }

  // Recognizes the '>'-built operator starting at the current token:
  // ">", ">=", ">>", ">>=", ">>>", ">>>=". Returns its text and how many
  // tokens it spans; empty if not at '>'.
  std::pair<std::string, int> gt_operator() const {
    if (!at_punct(">")) return {"", 0};
    std::size_t i = pos_;
    int gts = 1;
    while (gts < 3 && adjacent(i) && toks_[i + 1].is_punct(">")) {
      ++i;
      ++gts;
    }
    bool eq = adjacent(i) && toks_[i + 1].is_punct("=");
    std::string op(static_cast<std::size_t>(gts), '>');
    if (eq) op.push_back('=');
    return {op, gts + (eq ? 1 : 0)};
  }

  void consume_tokens(int n) {
    for (int i = 0; i < n; ++i) next();
  }

  // ---- annotations / modifiers ----------------------------------------

  // Consumes a run of annotations. '@interface' is a declaration, not an
  // annotation, and is left in place.
  void skip_annotations() {
    while (at_punct("@") && !peek().is("interface")) {
      next();
      expect_ident("annotation name");
      while (at_punct(".")) {
        next();
        expect_ident("annotation name");
      }
      if (at_punct("(")) skip_balanced("(", ")");
    }
  }

  Modifiers parse_modifiers() {
    Modifiers m;
    for (;;) {
      skip_annotations();
      if (at("public"))
        m.is_public = true;
      else if (at("protected"))
        m.is_protected = true;
      else if (at("private"))
        m.is_private = true;
      else if (at("static"))
        m.is_static = true;
      else if (at("final"))
        m.is_final = true;
      else if (at("abstract"))
        m.is_abstract = true;
      else if (at("default"))
        m.is_default = true;
      else if (at("synchronized") && peek().is_punct("(")) {
        break;  // synchronized statement, not a modifier
      } else if (is_modifier_word(cur().text)) {
        // remaining words carry no meaning downstream
      } else if (at("non") && adjacent(pos_) && peek().is_punct("-") && peek(2).is("sealed")) {
        consume_tokens(2);
      } else {
        break;
      }
      next();
    }
    return m;
  }

  void skip_balanced(const char* open, const char* close) {
    expect(open, "to open");
    int depth = 1;
    while (depth > 0) {
      if (at_eof()) fail(std::string("unbalanced '") + open + "'");
      if (at_punct(open))
        ++depth;
      else if (at_punct(close))
        --depth;
      next();
    }
  }

  // ---- types -----------------------------------------------------------

  // Speculative: returns false and restores position if the tokens here do
  // not form a type. Type arguments are parsed for well-formedness, then
  // dropped.
  bool try_type_ref(TypeRef& out) {
    std::size_t mark = save();
    skip_annotations();
    if (!at_ident() || is_reserved_non_type(cur().text)) {
      restore(mark);
      return false;
    }
    out = TypeRef{};
    out.line = cur().line;
    out.col = cur().col;
    if (is_primitive_name(cur().text)) {
      out.primitive = true;
      out.parts.push_back(cur().text);
      next();
    } else {
      out.parts.push_back(cur().text);
      next();
      if (at_punct("<") && !try_type_args()) {
        restore(mark);
        return false;
      }
      while (at_punct(".") && peek().kind == TokKind::Identifier &&
             !is_reserved_non_type(peek().text)) {
        next();
        out.parts.push_back(cur().text);
        next();
        if (at_punct("<") && !try_type_args()) {
          restore(mark);
          return false;
        }
      }
    }
    for (;;) {
      std::size_t dim_mark = save();
      skip_annotations();
      if (at_punct("[") && peek().is_punct("]")) {
        consume_tokens(2);
        ++out.dims;
      } else {
        restore(dim_mark);
        break;
      }
    }
    return true;
  }

  // '<' already current. Accepts only type-shaped contents so "a < b" in an
  // expression can never be mistaken for type arguments.
  bool try_type_args() {
    std::size_t mark = save();
    next();  // '<'
    if (at_punct(">")) {  // diamond
      next();
      return true;
    }
    for (;;) {
      if (at_punct("?")) {
        next();
        if (at("extends") || at("super")) {
          next();
          TypeRef t;
          if (!try_type_ref(t)) {
            restore(mark);
            return false;
          }
        }
      } else {
        TypeRef t;
        if (!try_type_ref(t)) {
          restore(mark);
          return false;
        }
        // intersection bounds inside arguments (rare, e.g. in wildcards)
        while (at_punct("&")) {
          next();
          TypeRef u;
          if (!try_type_ref(u)) {
            restore(mark);
            return false;
          }
        }
      }
      if (at_punct(",")) {
        next();
        continue;
      }
      if (at_punct(">")) {
        next();
        return true;
      }
      restore(mark);
      return false;
    }
  }

  TypeRef expect_type_ref(const char* what) {
    TypeRef t;
    if (!try_type_ref(t)) fail(std::string("expected type ") + what);
    return t;
  }

  // Type parameter declarations: <T, U extends A & B>. Names recorded by the
  // caller when needed; bounds are validated and dropped.
  std::vector<std::string> parse_type_params() {
    std::vector<std::string> names;
    expect("<", "to open type parameters");
    for (;;) {
      skip_annotations();
      names.push_back(expect_ident("type parameter"));
      if (accept("extends")) {
        expect_type_ref("bound");
        while (accept("&")) expect_type_ref("bound");
      }
      if (accept(",")) continue;
      expect(">", "to close type parameters");
      break;
    }
    return names;
  }

  std::string dotted_name() {
    std::string s = expect_ident("name");
    while (at_punct(".") && peek().kind == TokKind::Identifier) {
      next();
      s += ".";
      s += expect_ident("name");
    }
    return s;
  }

  // ---- declarations ----------------------------------------------------

  std::unique_ptr<TypeDecl> parse_type_decl() {
    int start = cur().line;
    Modifiers mods = parse_modifiers();
    auto decl = std::make_unique<TypeDecl>();
    decl->mods = mods;
    decl->start_line = start;
    decl->col = cur().col;

    if (at_punct("@") && peek().is("interface")) {
      consume_tokens(2);
      decl->kind = TypeDecl::Kind::Annotation;
      decl->name = expect_ident("annotation type name");
      parse_type_body(*decl);
      return decl;
    }
    if (accept("class")) {
      decl->kind = TypeDecl::Kind::Class;
    } else if (accept("interface")) {
      decl->kind = TypeDecl::Kind::Interface;
    } else if (accept("enum")) {
      decl->kind = TypeDecl::Kind::Enum;
    } else if (at("record") && peek().kind == TokKind::Identifier) {
      next();
      decl->kind = TypeDecl::Kind::Record;
    } else {
      fail("expected a type declaration");
    }
    decl->name = expect_ident("type name");
    if (at_punct("<")) decl->type_params = parse_type_params();

    if (decl->kind == TypeDecl::Kind::Record) {
      expect("(", "to open record components");
      if (!at_punct(")")) {
        for (;;) {
          skip_annotations();
          Param p;
          p.type = expect_type_ref("of record component");
          p.line = cur().line;
          p.col = cur().col;
          p.name = expect_ident("record component");
          decl->record_components.push_back(std::move(p));
          if (!accept(",")) break;
        }
      }
      expect(")", "to close record components");
    }

    if (accept("extends")) {
      if (decl->kind == TypeDecl::Kind::Interface) {
        decl->extends_types.push_back(expect_type_ref("after extends"));
        while (accept(",")) decl->extends_types.push_back(expect_type_ref("after extends"));
      } else {
        decl->extends_type = expect_type_ref("after extends");
      }
    }
    if (accept("implements")) {
      decl->implements_types.push_back(expect_type_ref("after implements"));
      while (accept(",")) decl->implements_types.push_back(expect_type_ref("after implements"));
    }
    if (accept("permits")) {
      expect_type_ref("after permits");
      while (accept(",")) expect_type_ref("after permits");
    }

    if (decl->kind == TypeDecl::Kind::Enum)
      parse_enum_body(*decl);
    else
      parse_type_body(*decl);
    return decl;
  }

  void parse_type_body(TypeDecl& decl) {
    expect("{", "to open type body");
    while (!at_punct("}")) {
      if (at_eof()) fail("unterminated type body");
      if (accept(";")) continue;
      decl.members.push_back(parse_member(decl));
    }
    decl.end_line = cur().line;
    next();  // '}'
  }

  void parse_enum_body(TypeDecl& decl) {
    expect("{", "to open enum body");
    // constants first, up to ';' or '}'
    while (!at_punct("}") && !at_punct(";")) {
      if (at_eof()) fail("unterminated enum body");
      skip_annotations();
      EnumConstant c;
      c.line = cur().line;
      c.col = cur().col;
      c.name = expect_ident("enum constant");
      if (at_punct("(")) {
        next();
        if (!at_punct(")")) {
          c.args.push_back(parse_expression());
          while (accept(",")) c.args.push_back(parse_expression());
        }
        expect(")", "to close enum constant arguments");
      }
      if (at_punct("{")) {
        next();
        while (!at_punct("}")) {
          if (at_eof()) fail("unterminated enum constant body");
          if (accept(";")) continue;
          c.body_members.push_back(parse_member(decl));
        }
        next();
      }
      decl.enum_constants.push_back(std::move(c));
      if (!accept(",")) break;
    }
    if (accept(";")) {
      while (!at_punct("}")) {
        if (at_eof()) fail("unterminated enum body");
        if (accept(";")) continue;
        decl.members.push_back(parse_member(decl));
      }
    }
    decl.end_line = cur().line;
    expect("}", "to close enum body");
  }

  std::unique_ptr<Member> parse_member(TypeDecl& owner) {
    DepthGuard guard(*this);
    auto member = std::make_unique<Member>();
    int start = cur().line;

    // initializer blocks, with or without 'static'
    if (at_punct("{") || (at("static") && peek().is_punct("{"))) {
      member->kind = Member::Kind::Init;
      member->init = std::make_unique<InitBlock>();
      member->init->is_static = accept("static");
      member->init->start_line = start;
      member->init->body = parse_block();
      member->init->end_line = prev_line();
      return member;
    }

    Modifiers mods = parse_modifiers();
    if (at("class") || at("interface") || at("enum") ||
        (at_punct("@") && peek().is("interface")) ||
        (at("record") && peek().kind == TokKind::Identifier && peek(2).is_punct("("))) {
      // roll back over the modifiers so parse_type_decl owns them
      member->kind = Member::Kind::Type;
      member->type = parse_nested_type(mods, start);
      return member;
    }
    if (at_punct("{")) {  // initializer block behind modifiers ('static' already eaten)
      member->kind = Member::Kind::Init;
      member->init = std::make_unique<InitBlock>();
      member->init->is_static = mods.is_static;
      member->init->start_line = start;
      member->init->body = parse_block();
      member->init->end_line = prev_line();
      return member;
    }

    std::vector<std::string> method_type_params;
    if (at_punct("<")) method_type_params = parse_type_params();

    // constructor: bare TypeName followed by '('
    if (at_ident() && cur().text == owner.name && peek().is_punct("(")) {
      std::string ctor_name = expect_ident("constructor name");
      member->kind = Member::Kind::Method;
      member->method = parse_callable(mods, TypeRef{}, ctor_name, start, /*is_ctor=*/true);
      return member;
    }
    // record compact constructor: bare TypeName followed by '{'
    if (owner.kind == TypeDecl::Kind::Record && at_ident() && cur().text == owner.name &&
        peek().is_punct("{")) {
      auto m = std::make_unique<MethodDecl>();
      m->name = cur().text;
      next();
      m->is_ctor = true;
      m->is_compact_ctor = true;
      m->mods = mods;
      m->start_line = start;
      m->col = cur().col;
      m->body = parse_block();
      m->end_line = prev_line();
      member->kind = Member::Kind::Method;
      member->method = std::move(m);
      return member;
    }

    TypeRef type = expect_type_ref("for member declaration");
    std::string name = expect_ident("member name");
    if (at_punct("(")) {
      member->kind = Member::Kind::Method;
      member->method = parse_callable(mods, std::move(type), name, start, /*is_ctor=*/false);
      return member;
    }
    // field declaration
    member->kind = Member::Kind::Field;
    auto f = std::make_unique<FieldDecl>();
    f->mods = mods;
    f->type = std::move(type);
    f->start_line = start;
    f->declarators.push_back(parse_declarator(name));
    while (accept(",")) {
      std::string n2 = expect_ident("field name");
      f->declarators.push_back(parse_declarator(n2));
    }
    f->end_line = cur().line;
    expect(";", "after field declaration");
    member->field = std::move(f);
    return member;
  }

  std::unique_ptr<TypeDecl> parse_nested_type(Modifiers mods, int start) {
    auto t = parse_type_decl();  // its own modifier scan finds nothing left
    t->mods = mods;
    t->start_line = start;
    return t;
  }

  VarDeclarator parse_declarator(std::string name) {
    VarDeclarator d;
    d.name = std::move(name);
    d.line = cur().line;
    d.col = cur().col;
    while (at_punct("[") && peek().is_punct("]")) {
      consume_tokens(2);
      ++d.extra_dims;
    }
    if (accept("=")) d.init = parse_variable_init();
    return d;
  }

  ExprPtr parse_variable_init() {
    if (at_punct("{")) return parse_array_init();
    return parse_expression();
  }

  ExprPtr parse_array_init() {
    auto e = make_expr(Expr::Kind::ArrayInit);
    expect("{", "to open array initializer");
    while (!at_punct("}")) {
      if (at_eof()) fail("unterminated array initializer");
      e->args.push_back(parse_variable_init());
      if (!accept(",")) break;
    }
    expect("}", "to close array initializer");
    return e;
  }

  std::unique_ptr<MethodDecl> parse_callable(Modifiers mods, TypeRef ret, std::string name,
                                             int start, bool is_ctor) {
    auto m = std::make_unique<MethodDecl>();
    m->name = std::move(name);
    m->is_ctor = is_ctor;
    m->mods = mods;
    m->return_type = std::move(ret);
    m->start_line = start;
    m->col = cur().col;
    expect("(", "to open parameter list");
    if (!at_punct(")")) {
      for (;;) {
        skip_annotations();
        while (at("final")) next();
        skip_annotations();
        Param p;
        p.type = expect_type_ref("of parameter");
        if (at_punct("...")) {
          next();
          ++p.type.dims;
        }
        p.line = cur().line;
        p.col = cur().col;
        if (at("this")) {  // receiver parameter: no artifact impact
          next();
          p.name = "this";
        } else {
          p.name = expect_ident("parameter name");
          while (at_punct("[") && peek().is_punct("]")) {
            consume_tokens(2);
            ++p.type.dims;
          }
        }
        m->params.push_back(std::move(p));
        if (!accept(",")) break;
      }
    }
    expect(")", "to close parameter list");
    while (at_punct("[") && peek().is_punct("]")) {  // archaic array-return suffix
      consume_tokens(2);
      ++m->return_type.dims;
    }
    if (accept("throws")) {
      m->throws_types.push_back(expect_type_ref("after throws"));
      while (accept(",")) m->throws_types.push_back(expect_type_ref("after throws"));
    }
    if (accept("default")) {  // annotation member default value
      if (at_punct("{"))
        parse_array_init();
      else if (at_punct("@"))
        skip_annotations();
      else
        parse_expression();
    }
    if (at_punct("{")) {
      m->body = parse_block();
      m->end_line = prev_line();
    } else {
      m->end_line = cur().line;
      expect(";", "after abstract method");
    }
    return m;
  }

  int prev_line() const { return toks_[pos_ > 0 ? pos_ - 1 : 0].line; }

  // ---- statements --------------------------------------------------------

  StmtPtr parse_block() {
    auto b = make_stmt(Stmt::Kind::Block);
    expect("{", "to open block");
    while (!at_punct("}")) {
      if (at_eof()) fail("unterminated block");
      b->stmts.push_back(parse_statement());
    }
    next();
    return b;
  }

  StmtPtr parse_statement() {
    DepthGuard guard(*this);
    if (at_punct("{")) return parse_block();
    if (at_punct(";")) {
      auto s = make_stmt(Stmt::Kind::Empty);
      next();
      return s;
    }
    if (at("if")) return parse_if();
    if (at("while")) return parse_while();
    if (at("do")) return parse_do();
    if (at("for")) return parse_for();
    if (at("switch")) return parse_switch_statement();
    if (at("try")) return parse_try();
    if (at("return")) {
      auto s = make_stmt(Stmt::Kind::Return);
      next();
      if (!at_punct(";")) s->expr = parse_expression();
      expect(";", "after return");
      return s;
    }
    if (at("throw")) {
      auto s = make_stmt(Stmt::Kind::Throw);
      next();
      s->expr = parse_expression();
      expect(";", "after throw");
      return s;
    }
    if (at("break") || at("continue")) {
      auto s = make_stmt(at("break") ? Stmt::Kind::Break : Stmt::Kind::Continue);
      next();
      if (at_ident()) s->name = expect_ident("label");
      expect(";", "after jump statement");
      return s;
    }
    if (at("synchronized") && peek().is_punct("(")) {
      auto s = make_stmt(Stmt::Kind::Synchronized);
      next();
      expect("(", "after synchronized");
      s->expr = parse_expression();
      expect(")", "after synchronized monitor");
      s->body = parse_block();
      return s;
    }
    if (at("assert")) {
      auto s = make_stmt(Stmt::Kind::Assert);
      next();
      s->expr = parse_expression();
      if (accept(":")) s->expr2 = parse_expression();
      expect(";", "after assert");
      return s;
    }
    if (at("yield") && in_switch_expr_ > 0 && !peek().is_punct("=") && !peek().is_punct(".") &&
        !peek().is_punct("[")) {
      auto s = make_stmt(Stmt::Kind::Yield);
      next();
      s->expr = parse_expression();
      expect(";", "after yield");
      return s;
    }
    // local type declarations (possibly behind modifiers/annotations)
    {
      std::size_t mark = save();
      Modifiers mods = parse_modifiers();
      if (at("class") || at("interface") || at("enum") ||
          (at("record") && peek().kind == TokKind::Identifier && peek(2).is_punct("("))) {
        auto s = make_stmt(Stmt::Kind::LocalType);
        s->local_type = parse_nested_type(mods, cur().line);
        return s;
      }
      restore(mark);
    }
    // labeled statement
    if (at_ident() && peek().is_punct(":") && !is_reserved_non_type(cur().text)) {
      auto s = make_stmt(Stmt::Kind::Labeled);
      s->name = expect_ident("label");
      next();  // ':'
      s->body = parse_statement();
      return s;
    }
    if (StmtPtr s = try_local_var_statement()) return s;
    auto s = make_stmt(Stmt::Kind::ExprStmt);
    s->expr = parse_expression();
    expect(";", "after expression statement");
    return s;
  }

  // Local variable declaration, ending at ';' — or nothing (restores).
  StmtPtr try_local_var_statement() {
    std::size_t mark = save();
    StmtPtr s = try_local_var_decl();
    if (!s) return nullptr;
    if (!accept(";")) {
      restore(mark);
      return nullptr;
    }
    return s;
  }

  // The declaration proper, without the terminating ';' (shared with for-init
  // and try-resources). Restores and returns null when this isn't a decl.
  StmtPtr try_local_var_decl() {
    std::size_t mark = save();
    auto s = make_stmt(Stmt::Kind::LocalVar);
    skip_annotations();
    while (at("final")) {
      next();
      skip_annotations();
    }
    TypeRef type;
    if (!try_type_ref(type)) {
      restore(mark);
      return nullptr;
    }
    if (type.parts.size() == 1 && type.parts[0] == "var" && type.dims == 0) {
      s->infer_type = true;
    } else {
      s->var_type = type;
    }
    if (!at_ident() || is_reserved_non_type(cur().text)) {
      restore(mark);
      return nullptr;
    }
    std::string name = cur().text;
    const Token& after = peek();
    bool decl_shaped = after.is_punct("=") || after.is_punct(";") || after.is_punct(",") ||
                       (after.is_punct("[") && peek(2).is_punct("]")) || after.is_punct(":");
    // ':' covers for-each headers, which reuse this parse.
    if (!decl_shaped) {
      restore(mark);
      return nullptr;
    }
    next();
    if (at_punct(":")) {  // for-each: hand back to caller with one declarator
      s->declarators.push_back(VarDeclarator{name, 0, nullptr, cur().line, cur().col});
      return s;
    }
    s->declarators.push_back(parse_declarator(name));
    while (accept(",")) {
      std::string n = expect_ident("variable name");
      s->declarators.push_back(parse_declarator(n));
    }
    return s;
  }

  StmtPtr parse_if() {
    auto s = make_stmt(Stmt::Kind::If);
    next();
    expect("(", "after if");
    s->expr = parse_expression();
    expect(")", "after if condition");
    s->body = parse_statement();
    if (accept("else")) s->else_body = parse_statement();
    return s;
  }

  StmtPtr parse_while() {
    auto s = make_stmt(Stmt::Kind::While);
    next();
    expect("(", "after while");
    s->expr = parse_expression();
    expect(")", "after while condition");
    s->body = parse_statement();
    return s;
  }

  StmtPtr parse_do() {
    auto s = make_stmt(Stmt::Kind::DoWhile);
    next();
    s->body = parse_statement();
    expect("while", "after do body");
    expect("(", "after do-while");
    s->expr = parse_expression();
    expect(")", "after do-while condition");
    expect(";", "after do-while");
    return s;
  }

  StmtPtr parse_for() {
    int line = cur().line, col = cur().col;
    next();
    expect("(", "after for");
    // for-each?
    {
      std::size_t mark = save();
      StmtPtr decl = try_local_var_decl();
      if (decl && decl->declarators.size() == 1 && !decl->declarators[0].init && accept(":")) {
        auto s = make_stmt(Stmt::Kind::ForEach);
        s->line = line;
        s->col = col;
        s->var_type = decl->var_type;
        s->infer_type = decl->infer_type;
        s->declarators = std::move(decl->declarators);
        s->expr = parse_expression();
        expect(")", "after for-each header");
        s->body = parse_statement();
        return s;
      }
      restore(mark);
    }
    auto s = make_stmt(Stmt::Kind::ForClassic);
    s->line = line;
    s->col = col;
    if (!accept(";")) {
      if (StmtPtr decl = try_local_var_decl()) {
        s->stmts.push_back(std::move(decl));
      } else {
        auto es = make_stmt(Stmt::Kind::ExprStmt);
        es->expr = parse_expression();
        s->stmts.push_back(std::move(es));
        while (accept(",")) {
          auto es2 = make_stmt(Stmt::Kind::ExprStmt);
          es2->expr = parse_expression();
          s->stmts.push_back(std::move(es2));
        }
      }
      expect(";", "after for initializer");
    }
    if (!at_punct(";")) s->expr = parse_expression();
    expect(";", "after for condition");
    if (!at_punct(")")) {
      s->update_exprs.push_back(parse_expression());
      while (accept(",")) s->update_exprs.push_back(parse_expression());
    }
    expect(")", "after for header");
    s->body = parse_statement();
    return s;
  }

  StmtPtr parse_try() {
    auto s = make_stmt(Stmt::Kind::Try);
    next();
    if (at_punct("(")) {
      next();
      while (!at_punct(")")) {
        if (StmtPtr r = try_local_var_decl()) {
          s->stmts.push_back(std::move(r));
        } else {
          auto es = make_stmt(Stmt::Kind::ExprStmt);
          es->expr = parse_expression();
          s->stmts.push_back(std::move(es));
        }
        if (!accept(";")) break;
      }
      expect(")", "after try resources");
    }
    s->body = parse_block();
    while (at("catch")) {
      CatchClause c;
      next();
      expect("(", "after catch");
      while (at("final")) next();
      skip_annotations();
      c.types.push_back(expect_type_ref("of catch parameter"));
      while (accept("|")) c.types.push_back(expect_type_ref("of catch parameter"));
      c.line = cur().line;
      c.col = cur().col;
      c.var = expect_ident("catch parameter");
      expect(")", "after catch parameter");
      c.block = parse_block();
      s->catches.push_back(std::move(c));
    }
    if (accept("finally")) s->finally_body = parse_block();
    if (s->catches.empty() && !s->finally_body && s->stmts.empty())
      fail("try needs catch, finally, or resources");
    return s;
  }

  StmtPtr parse_switch_statement() {
    auto s = make_stmt(Stmt::Kind::Switch);
    parse_switch_into(*s, /*as_expression=*/false);
    return s;
  }

  void parse_switch_into(Stmt& s, bool as_expression) {
    s.line = cur().line;
    s.col = cur().col;
    expect("switch", "at switch");
    expect("(", "after switch");
    s.expr = parse_expression();
    expect(")", "after switch selector");
    expect("{", "to open switch body");
    if (as_expression) ++in_switch_expr_;
    while (!at_punct("}")) {
      if (at_eof()) fail("unterminated switch body");
      SwitchCase c;
      if (accept("default")) {
        c.is_default = true;
      } else {
        expect("case", "in switch body");
        for (;;) {
          parse_case_label(c);
          if (!accept(",")) break;
        }
        if (at("when")) {
          next();
          c.guard = parse_expression();
        }
      }
      if (accept(":")) {
        c.arrow = false;
        while (!at_punct("}") && !at("case") && !at("default")) {
          if (at_eof()) fail("unterminated switch case");
          c.body.push_back(parse_statement());
        }
      } else if (at_punct("->")) {
        next();
        c.arrow = true;
        if (at_punct("{")) {
          c.body.push_back(parse_block());
        } else if (at("throw")) {
          c.body.push_back(parse_statement());
        } else {
          auto es = make_stmt(Stmt::Kind::ExprStmt);
          es->expr = parse_expression();
          expect(";", "after switch arm expression");
          c.body.push_back(std::move(es));
        }
      } else {
        fail("expected ':' or '->' after switch label");
      }
      s.cases.push_back(std::move(c));
    }
    if (as_expression) --in_switch_expr_;
    next();  // '}'
  }

  void parse_case_label(SwitchCase& c) {
    if (at("null")) {
      auto e = make_expr(Expr::Kind::Literal);
      e->name = "null";
      e->text = "null";
      next();
      c.label_exprs.push_back(std::move(e));
      return;
    }
    // type pattern: Type ident, or record pattern Type(...)
    {
      std::size_t mark = save();
      TypeRef t;
      if (try_type_ref(t) && !t.primitive) {
        if (at_ident() && !is_reserved_non_type(cur().text) &&
            (peek().is_punct(":") || peek().is_punct(",") || peek().is_punct("->") ||
             peek().is("when"))) {
          std::string var = expect_ident("pattern variable");
          c.label_patterns.push_back({std::move(t), std::move(var)});
          return;
        }
        if (at_punct("(")) {  // record deconstruction: note the type, skip the pattern
          skip_balanced("(", ")");
          c.label_patterns.push_back({std::move(t), ""});
          return;
        }
      }
      restore(mark);
    }
    c.label_exprs.push_back(parse_expression());
  }

  // ---- expressions -------------------------------------------------------

  ExprPtr make_expr(Expr::Kind k) {
    auto e = std::make_unique<Expr>(k);
    e->line = cur().line;
    e->col = cur().col;
    return e;
  }
  StmtPtr make_stmt(Stmt::Kind k) {
    auto s = std::make_unique<Stmt>(k);
    s->line = cur().line;
    s->col = cur().col;
    return s;
  }

  ExprPtr parse_expression() {
    DepthGuard guard(*this);
    return parse_assignment();
  }

  bool at_assign_op(std::string& op, int& ntoks) {
    static const char* const ops[] = {"=",  "+=", "-=", "*=", "/=", "%=",
                                      "&=", "|=", "^=", "<<="};
    for (const char* o : ops) {
      if (at_punct(o)) {
        op = o;
        ntoks = 1;
        return true;
      }
    }
    auto [gt, n] = gt_operator();
    if (gt == ">>=" || gt == ">>>=") {
      op = gt;
      ntoks = n;
      return true;
    }
    return false;
  }

  ExprPtr parse_assignment() {
    if (ExprPtr lam = try_lambda()) return lam;
    ExprPtr lhs = parse_ternary();
    std::string op;
    int n = 0;
    if (at_assign_op(op, n)) {
      auto e = make_expr(Expr::Kind::Assign);
      e->name = op;
      consume_tokens(n);
      e->lhs = std::move(lhs);
      e->rhs = parse_assignment();
      return e;
    }
    return lhs;
  }

  ExprPtr parse_ternary() {
    ExprPtr cond = parse_binary(0);
    if (at_punct("?")) {
      auto e = make_expr(Expr::Kind::Ternary);
      next();
      e->lhs = std::move(cond);
      e->rhs = parse_expression();
      expect(":", "in conditional expression");
      e->third = parse_assignment();
      return e;
    }
    return cond;
  }

  // Precedence table for binary operators; -1 = not binary here.
  int binary_prec(const std::string& op) const {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 7;
    if (op == "<<" || op == ">>" || op == ">>>") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return -1;
  }

  ExprPtr parse_binary(int min_prec) {
    DepthGuard guard(*this);
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (at("instanceof") && 7 >= min_prec) {
        auto e = make_expr(Expr::Kind::InstanceOf);
        next();
        accept("final");
        e->type_ref = expect_type_ref("after instanceof");
        if (at_punct("(")) {  // record pattern — validated and dropped
          skip_balanced("(", ")");
        } else if (at_ident() && !is_reserved_non_type(cur().text)) {
          e->name = expect_ident("pattern variable");
        }
        e->lhs = std::move(lhs);
        lhs = std::move(e);
        continue;
      }
      std::string op;
      int ntoks = 1;
      if (at_punct(">")) {
        auto [gt, n] = gt_operator();
        if (gt == ">>=" || gt == ">>>=") break;  // assignment, not ours
        op = gt;
        ntoks = n;
      } else if (cur().kind == TokKind::Punct) {
        op = cur().text;
      } else {
        break;
      }
      int prec = binary_prec(op);
      if (prec < min_prec || prec == -1) break;
      auto e = make_expr(Expr::Kind::Binary);
      e->name = op;
      consume_tokens(ntoks);
      e->lhs = std::move(lhs);
      e->rhs = parse_binary(prec + 1);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    DepthGuard guard(*this);
    if (at_punct("+") || at_punct("-") || at_punct("!") || at_punct("~") || at_punct("++") ||
        at_punct("--")) {
      auto e = make_expr(Expr::Kind::Unary);
      e->name = cur().text;
      next();
      e->lhs = parse_unary();
      return e;
    }
    if (at_punct("(")) {
      if (ExprPtr cast = try_cast()) return cast;
      if (ExprPtr lam = try_lambda()) return lam;
      // parenthesized expression — transparent in the tree
      next();
      ExprPtr inner = parse_expression();
      expect(")", "to close parenthesized expression");
      return parse_postfix(std::move(inner));
    }
    return parse_postfix(parse_primary());
  }

  // True when the current token could begin a unary expression operand.
  bool starts_operand(bool allow_sign) const {
    const Token& t = cur();
    switch (t.kind) {
      case TokKind::Identifier:
        return !is_reserved_non_type(t.text) || t.text == "this" || t.text == "super" ||
               t.text == "new" || t.text == "true" || t.text == "false" || t.text == "null";
      case TokKind::IntLit:
      case TokKind::FloatLit:
      case TokKind::CharLit:
      case TokKind::StringLit:
        return true;
      case TokKind::Punct:
        if (t.text == "(" || t.text == "!" || t.text == "~") return true;
        if (allow_sign && (t.text == "+" || t.text == "-" || t.text == "++" || t.text == "--"))
          return true;
        return false;
      default:
        return false;
    }
  }

  ExprPtr try_cast() {
    std::size_t mark = save();
    auto e = make_expr(Expr::Kind::Cast);
    next();  // '('
    TypeRef t;
    if (!try_type_ref(t)) {
      restore(mark);
      return nullptr;
    }
    bool intersection = false;
    while (at_punct("&")) {  // (A & B) lambda-friendly casts
      next();
      TypeRef dummy;
      if (!try_type_ref(dummy)) {
        restore(mark);
        return nullptr;
      }
      intersection = true;
    }
    if (!at_punct(")")) {
      restore(mark);
      return nullptr;
    }
    next();
    // Primitive casts may precede signed operands; reference casts must not,
    // or "(a) + b" would turn into a cast.
    bool operand_ok = starts_operand(t.primitive);
    if (!operand_ok) {
      restore(mark);
      return nullptr;
    }
    e->type_ref = std::move(t);
    (void)intersection;
    e->lhs = parse_unary();
    return e;
  }

  ExprPtr try_lambda() {
    std::size_t mark = save();
    if (at_ident() && !is_reserved_non_type(cur().text) && peek().is_punct("->")) {
      auto e = make_expr(Expr::Kind::Lambda);
      Param p;
      p.name = cur().text;
      p.line = cur().line;
      p.col = cur().col;
      e->params.push_back(std::move(p));
      consume_tokens(2);
      parse_lambda_body(*e);
      return e;
    }
    if (!at_punct("(")) return nullptr;
    // find the matching ')' and check for '->'
    std::size_t i = pos_;
    int depth = 0;
    for (; i < toks_.size() && toks_[i].kind != TokKind::Eof; ++i) {
      if (toks_[i].is_punct("(")) ++depth;
      if (toks_[i].is_punct(")")) {
        if (--depth == 0) break;
      }
    }
    if (i >= toks_.size() || !toks_[i].is_punct(")") || !toks_[i + 1].is_punct("->"))
      return nullptr;
    auto e = make_expr(Expr::Kind::Lambda);
    next();  // '('
    while (!at_punct(")")) {
      skip_annotations();
      while (at("final")) next();
      Param p;
      std::size_t pmark = save();
      TypeRef t;
      if (try_type_ref(t) && at_ident() && !is_reserved_non_type(cur().text)) {
        if (!(t.parts.size() == 1 && t.parts[0] == "var")) p.type = t;
        p.line = cur().line;
        p.col = cur().col;
        p.name = expect_ident("lambda parameter");
      } else {
        restore(pmark);
        p.line = cur().line;
        p.col = cur().col;
        p.name = expect_ident("lambda parameter");
      }
      e->params.push_back(std::move(p));
      if (!accept(",")) break;
    }
    expect(")", "to close lambda parameters");
    if (!at_punct("->")) {  // shouldn't happen given the scan above
      restore(mark);
      return nullptr;
    }
    next();
    parse_lambda_body(*e);
    return e;
  }

  void parse_lambda_body(Expr& e) {
    if (at_punct("{"))
      e.body = parse_block();
    else
      e.lhs = parse_expression();
  }

  ExprPtr parse_primary() {
    DepthGuard guard(*this);
    const Token& t = cur();
    switch (t.kind) {
      case TokKind::IntLit:
      case TokKind::FloatLit:
      case TokKind::CharLit:
      case TokKind::StringLit: {
        auto e = make_expr(Expr::Kind::Literal);
        e->text = t.text;
        e->name = t.kind == TokKind::IntLit     ? "int"
                  : t.kind == TokKind::FloatLit ? "float"
                  : t.kind == TokKind::CharLit  ? "char"
                                                : "string";
        next();
        return e;
      }
      case TokKind::Identifier:
        break;
      default:
        fail("expected expression");
    }

    if (at("true") || at("false") || at("null")) {
      auto e = make_expr(Expr::Kind::Literal);
      e->name = at("null") ? "null" : "bool";
      e->text = cur().text;
      next();
      return e;
    }
    if (at("this")) {
      auto e = make_expr(Expr::Kind::This);
      next();
      if (at_punct("(")) {  // this(...) — alternate constructor invocation
        auto call = make_expr(Expr::Kind::MethodCall);
        call->line = e->line;
        call->col = e->col;
        call->name = "this";
        parse_call_args(*call);
        return call;
      }
      return e;
    }
    if (at("super")) {
      auto e = make_expr(Expr::Kind::Super);
      next();
      if (at_punct("(")) {  // super(...) — superclass constructor invocation
        auto call = make_expr(Expr::Kind::MethodCall);
        call->line = e->line;
        call->col = e->col;
        call->name = "super";
        parse_call_args(*call);
        return call;
      }
      return e;
    }
    if (at("new")) return parse_creation();
    if (at("switch")) {
      auto e = make_expr(Expr::Kind::SwitchExpr);
      auto carrier = make_stmt(Stmt::Kind::Switch);
      parse_switch_into(*carrier, /*as_expression=*/true);
      e->lhs = nullptr;
      e->body = std::move(carrier);
      return e;
    }
    if (is_primitive_name(t.text)) {  // int.class, int[].class
      auto e = make_expr(Expr::Kind::ClassLiteral);
      e->type_ref = expect_type_ref("primitive class literal");
      expect(".", "in class literal");
      expect("class", "in class literal");
      return e;
    }
    if (is_reserved_non_type(t.text)) fail("unexpected keyword in expression");
    if (peek().is_punct("(")) {  // unqualified call: foo(args)
      auto e = make_expr(Expr::Kind::MethodCall);
      e->name = t.text;
      next();
      parse_call_args(*e);
      return e;
    }
    auto e = make_expr(Expr::Kind::Name);
    e->name = t.text;
    next();
    return e;
  }

  void parse_call_args(Expr& call) {
    expect("(", "to open arguments");
    if (!at_punct(")")) {
      call.args.push_back(parse_expression());
      while (accept(",")) call.args.push_back(parse_expression());
    }
    expect(")", "to close arguments");
  }

  ExprPtr parse_creation() {
    auto e = make_expr(Expr::Kind::ObjectCreation);
    expect("new", "at creation");
    if (at_punct("<")) {
      if (!try_type_args()) fail("malformed constructor type arguments");
    }
    TypeRef t = expect_type_ref("after new");
    // try_type_ref consumed "[]" pairs; explicit sized dims may remain.
    if (t.dims > 0 || at_punct("[")) {
      e->kind = Expr::Kind::ArrayCreation;
      e->type_ref = std::move(t);
      while (at_punct("[")) {
        next();
        if (at_punct("]")) {
          next();
          ++e->type_ref.dims;
        } else {
          e->args.push_back(parse_expression());
          ++e->type_ref.dims;
          expect("]", "to close array dimension");
        }
      }
      if (at_punct("{")) e->lhs = parse_array_init();
      return e;
    }
    e->type_ref = std::move(t);
    parse_call_args(*e);
    if (at_punct("{")) {  // anonymous class body
      next();
      TypeDecl shim;  // owner context for member parsing; ctors can't appear
      shim.name = e->type_ref.parts.empty() ? "" : e->type_ref.parts.back();
      shim.kind = TypeDecl::Kind::Class;
      while (!at_punct("}")) {
        if (at_eof()) fail("unterminated anonymous class body");
        if (accept(";")) continue;
        e->anon_members.push_back(parse_member(shim));
      }
      next();
    }
    return e;
  }

  ExprPtr parse_postfix(ExprPtr base) {
    DepthGuard guard(*this);
    for (;;) {
      if (at_punct(".")) {
        // class-literal tail on a pure name chain
        if (peek().is("class")) {
          TypeRef t = flatten_name_chain(base.get());
          if (!t.empty()) {
            consume_tokens(2);
            auto e = make_expr(Expr::Kind::ClassLiteral);
            e->line = base->line;
            e->col = base->col;
            e->type_ref = std::move(t);
            base = std::move(e);
            continue;
          }
        }
        if (peek().is("this")) {  // Outer.this
          TypeRef t = flatten_name_chain(base.get());
          consume_tokens(2);
          auto e = make_expr(Expr::Kind::This);
          e->type_ref = std::move(t);
          base = std::move(e);
          continue;
        }
        if (peek().is("new")) {  // receiver.new Inner(...)
          next();
          ExprPtr creation = parse_creation();
          creation->lhs = std::move(base);
          base = std::move(creation);
          continue;
        }
        if (peek().is("super")) {  // Interface.super.method(...)
          consume_tokens(2);
          auto e = make_expr(Expr::Kind::Super);
          base = std::move(e);
          continue;
        }
        next();
        if (at_punct("<")) {  // explicit type arguments on a call
          if (!try_type_args()) fail("malformed call type arguments");
        }
        std::string name = expect_ident("member name");
        if (at_punct("(")) {
          auto e = make_expr(Expr::Kind::MethodCall);
          e->line = base->line;
          e->name = std::move(name);
          e->lhs = std::move(base);
          parse_call_args(*e);
          base = std::move(e);
        } else {
          auto e = make_expr(Expr::Kind::FieldAccess);
          e->line = base->line;
          e->name = std::move(name);
          e->lhs = std::move(base);
          base = std::move(e);
        }
        continue;
      }
      if (at_punct("[")) {
        if (peek().is_punct("]")) {  // Foo[].class
          TypeRef t = flatten_name_chain(base.get());
          if (t.empty()) fail("unexpected '[]' after expression");
          while (at_punct("[") && peek().is_punct("]")) {
            consume_tokens(2);
            ++t.dims;
          }
          expect(".", "in class literal");
          expect("class", "in class literal");
          auto e = make_expr(Expr::Kind::ClassLiteral);
          e->type_ref = std::move(t);
          base = std::move(e);
          continue;
        }
        auto e = make_expr(Expr::Kind::ArrayAccess);
        next();
        e->lhs = std::move(base);
        e->rhs = parse_expression();
        expect("]", "to close index");
        base = std::move(e);
        continue;
      }
      if (at_punct("::")) {
        next();
        auto e = make_expr(Expr::Kind::MethodRef);
        if (at_punct("<")) {
          if (!try_type_args()) fail("malformed method reference type arguments");
        }
        if (at("new")) {
          e->name = "new";
          next();
        } else {
          e->name = expect_ident("method reference name");
        }
        e->lhs = std::move(base);
        base = std::move(e);
        continue;
      }
      if (at_punct("++") || at_punct("--")) {
        auto e = make_expr(Expr::Kind::Unary);
        e->name = "post" + cur().text;
        next();
        e->lhs = std::move(base);
        base = std::move(e);
        continue;
      }
      break;
    }
    return base;
  }

  // Name / FieldAccess chains like a.b.C become TypeRefs for class literals
  // and qualified this. Empty result = not a pure name chain.
  TypeRef flatten_name_chain(const Expr* e) {
    std::vector<std::string> rev;
    while (e) {
      if (e->kind == Expr::Kind::Name) {
        rev.push_back(e->name);
        break;
      }
      if (e->kind == Expr::Kind::FieldAccess) {
        rev.push_back(e->name);
        e = e->lhs.get();
        continue;
      }
      return TypeRef{};
    }
    if (!e) return TypeRef{};
    TypeRef t;
    t.parts.assign(rev.rbegin(), rev.rend());
    return t;
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int in_switch_expr_ = 0;

  friend struct DepthGuard;
};

}  // namespace

ParseOutcome parse_java(const std::string& source, const std::string& file) {
  ParseOutcome out;
  LexResult lexed = lex(source);
  for (const auto& e : lexed.errors) out.errors.push_back({e.message, e.line});
  if (!out.errors.empty()) return out;
  Parser parser(std::move(lexed.tokens), file);
  try {
    out.unit = parser.run();
    out.unit->line_has_code = std::move(lexed.line_has_code);
  } catch (const ParseFail& f) {
    out.unit.reset();
    out.errors.push_back({f.message, f.line});
  }
  return out;
}

}  // namespace smelldep::model
