#pragma once

#include <memory>
#include <string>
#include <vector>

#include "smelldep/model/ast.hpp"

namespace smelldep::model {

struct ParseError {
  std::string message;
  int line = 0;
};

struct ParseOutcome {
  // Null when the file could not be parsed; errors then explain why. A unit
  // is produced only from a clean parse — partially-understood files would
  // silently skew metrics, so they are rejected whole and reported.
  std::unique_ptr<ast::CompilationUnit> unit;
  std::vector<ParseError> errors;
};

// Parses one Java source file (the subset described in docs/java-subset.md).
// `file` is recorded on the unit for diagnostics and artifact locations.
ParseOutcome parse_java(const std::string& source, const std::string& file);

}  // namespace smelldep::model
