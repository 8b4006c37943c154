#pragma once

#include <string>
#include <vector>

namespace smelldep {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Global log threshold, initialized once from the SMELLDEP_LOG environment
// variable (error|warn|info|debug, default warn). Messages go to stderr so
// they never contaminate data written to stdout or to output files.
LogLevel log_threshold();
void log_message(LogLevel level, const std::string& msg);

inline void log_error(const std::string& m) { log_message(LogLevel::Error, m); }
inline void log_warn(const std::string& m) { log_message(LogLevel::Warn, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::Info, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::Debug, m); }

// One recorded event from a pipeline stage: a file that failed to parse, an
// unresolved reference that was skipped, an ambiguous overload, etc.
// Diagnostics are data, not control flow: stages keep going and the caller
// decides (via severity) whether the run ends with a partial-results code.
struct Diagnostic {
  enum class Severity { Note, Warning, Error };
  Severity severity = Severity::Note;
  std::string category;  // e.g. "parse-error", "unresolved-call"
  std::string file;      // source file it concerns, if any
  int line = 0;
  std::string message;
};

struct Diagnostics {
  std::vector<Diagnostic> items;

  void note(std::string category, std::string file, int line, std::string message);
  void warning(std::string category, std::string file, int line, std::string message);
  void error(std::string category, std::string file, int line, std::string message);

  bool has_errors() const;
  std::size_t count(const std::string& category) const;
};

}  // namespace smelldep
