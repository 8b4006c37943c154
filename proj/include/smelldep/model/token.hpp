#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smelldep::model {

// Reserved and contextual words are lexed as plain identifiers; the parser
// decides by text. Punctuation is maximal-munch EXCEPT '>', which is always
// emitted alone so that nested generic closers ("List<Map<K,V>>") need no
// lexer feedback; the expression parser re-merges adjacent '>' tokens into
// shift/comparison operators.
enum class TokKind : std::uint8_t {
  Identifier,
  IntLit,
  FloatLit,
  CharLit,
  StringLit,
  Punct,
  Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int line = 1;  // 1-based
  int col = 1;   // 1-based, in bytes
  std::size_t offset = 0;

  bool is(const char* s) const { return text == s; }
  bool is_punct(const char* s) const { return kind == TokKind::Punct && text == s; }
};

struct LexError {
  std::string message;
  int line = 0;
};

struct LexResult {
  std::vector<Token> tokens;           // always ends with one Eof token
  std::vector<bool> line_has_code;     // index = line number (element 0 unused)
  std::vector<LexError> errors;
};

// Tokenizes Java source. Comments and blank space never appear as tokens but
// are excluded from line_has_code, which is what physical-LOC counting reads.
LexResult lex(const std::string& source);

// Number of lines in [first, last] (1-based, inclusive) that carry at least
// one token. Out-of-range lines count as blank.
int count_code_lines(const std::vector<bool>& line_has_code, int first, int last);

}  // namespace smelldep::model
