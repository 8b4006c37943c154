#include "smelldep/model/token.hpp"

namespace smelldep::model {

namespace {

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}
bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  LexResult run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        advance(1);
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else if (c == '/' && peek(1) == '*') {
        block_comment();
      } else {
        token();
      }
    }
    push(TokKind::Eof, pos_, pos_);
    result_.line_has_code.resize(static_cast<std::size_t>(line_) + 1, false);
    for (const auto& t : marks_)
      for (int ln = t.first; ln <= t.second; ++ln)
        result_.line_has_code[static_cast<std::size_t>(ln)] = true;
    return std::move(result_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }

  void block_comment() {
    int start_line = line_;
    advance(2);
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*' && peek(1) == '/') {
        advance(2);
        return;
      }
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else {
        advance(1);
      }
    }
    result_.errors.push_back({"unterminated block comment", start_line});
  }

  void push(TokKind kind, std::size_t begin, std::size_t end, int tok_line = 0, int tok_col = 0) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(begin, end - begin);
    t.line = tok_line ? tok_line : line_;
    t.col = tok_col ? tok_col : col_;
    t.offset = begin;
    int first_line = t.line;
    result_.tokens.push_back(std::move(t));
    if (kind != TokKind::Eof) marks_.push_back({first_line, line_});
  }

  void token() {
    std::size_t begin = pos_;
    int tline = line_, tcol = col_;
    char c = src_[pos_];

    if (is_ident_start(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_])))
        advance(1);
      push(TokKind::Identifier, begin, pos_, tline, tcol);
      return;
    }
    if (is_digit(static_cast<unsigned char>(c)) ||
        (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      number(begin, tline, tcol);
      return;
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"')
        text_block(begin, tline, tcol);
      else
        string_lit(begin, tline, tcol);
      return;
    }
    if (c == '\'') {
      char_lit(begin, tline, tcol);
      return;
    }
    punct(begin, tline, tcol);
  }

  void number(std::size_t begin, int tline, int tcol) {
    bool is_float = false;
    if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance(2);
      while (pos_ < src_.size() && (is_hex_digit(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_' || src_[pos_] == '.'))
        advance(1);
      if (pos_ < src_.size() && (src_[pos_] == 'p' || src_[pos_] == 'P')) {  // hex float exponent
        is_float = true;
        advance(1);
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance(1);
        while (pos_ < src_.size() && is_digit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      }
    } else if (src_[pos_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance(2);
      while (pos_ < src_.size() && (src_[pos_] == '0' || src_[pos_] == '1' || src_[pos_] == '_'))
        advance(1);
    } else {
      while (pos_ < src_.size() &&
             (is_digit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance(1);
      if (pos_ < src_.size() && src_[pos_] == '.' &&
          is_digit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance(1);
        while (pos_ < src_.size() &&
               (is_digit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance(1);
      } else if (pos_ < src_.size() && src_[pos_] == '.' && src_[begin] != '.' &&
                 !is_ident_start(static_cast<unsigned char>(peek(1)))) {
        // Trailing-dot float ("1."). A letter after the dot is left for the
        // parser instead, so degenerate member chains still tokenize sanely.
        is_float = true;
        advance(1);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        is_float = true;
        advance(1);
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance(1);
        while (pos_ < src_.size() && is_digit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      }
    }
    if (pos_ < src_.size()) {
      char s = src_[pos_];
      if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
        is_float = true;
        advance(1);
      } else if (s == 'l' || s == 'L') {
        advance(1);
      }
    }
    push(is_float ? TokKind::FloatLit : TokKind::IntLit, begin, pos_, tline, tcol);
  }

  // Consumes one possibly-escaped character inside a quoted literal.
  void quoted_char() {
    if (src_[pos_] == '\\' && pos_ + 1 < src_.size())
      advance(2);
    else if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      ++pos_;
    } else
      advance(1);
  }

  void string_lit(std::size_t begin, int tline, int tcol) {
    advance(1);
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') quoted_char();
    if (pos_ < src_.size() && src_[pos_] == '"')
      advance(1);
    else
      result_.errors.push_back({"unterminated string literal", tline});
    push(TokKind::StringLit, begin, pos_, tline, tcol);
  }

  void text_block(std::size_t begin, int tline, int tcol) {
    advance(3);
    while (pos_ < src_.size()) {
      if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
        advance(3);
        push(TokKind::StringLit, begin, pos_, tline, tcol);
        return;
      }
      quoted_char();
    }
    result_.errors.push_back({"unterminated text block", tline});
    push(TokKind::StringLit, begin, pos_, tline, tcol);
  }

  void char_lit(std::size_t begin, int tline, int tcol) {
    advance(1);
    while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') quoted_char();
    if (pos_ < src_.size() && src_[pos_] == '\'')
      advance(1);
    else
      result_.errors.push_back({"unterminated character literal", tline});
    push(TokKind::CharLit, begin, pos_, tline, tcol);
  }

  void punct(std::size_t begin, int tline, int tcol) {
    // Longest first; '>' is deliberately absent from every multi-char entry
    // (so ">>", ">=", ">>>=", ... reach the parser as single '>' tokens plus
    // a possible '=', re-merged there by adjacency).
    static const char* const multi[] = {
        "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
        "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    };
    for (const char* m : multi) {
      std::size_t len = std::char_traits<char>::length(m);
      if (src_.compare(pos_, len, m) == 0) {
        advance(len);
        push(TokKind::Punct, begin, pos_, tline, tcol);
        return;
      }
    }
    advance(1);
    push(TokKind::Punct, begin, pos_, tline, tcol);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  LexResult result_;
  std::vector<std::pair<int, int>> marks_;  // token line spans for LOC
};

}  // namespace

LexResult lex(const std::string& source) { return Lexer(source).run(); }

int count_code_lines(const std::vector<bool>& line_has_code, int first, int last) {
  int n = 0;
  for (int ln = first; ln <= last; ++ln)
    if (ln > 0 && static_cast<std::size_t>(ln) < line_has_code.size() &&
        line_has_code[static_cast<std::size_t>(ln)])
      ++n;
  return n;
}

}  // namespace smelldep::model
