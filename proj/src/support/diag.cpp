#include "smelldep/support/diag.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace smelldep {

static LogLevel parse_log_env() {
  const char* v = std::getenv("SMELLDEP_LOG");
  if (!v) return LogLevel::Warn;
  if (std::strcmp(v, "error") == 0) return LogLevel::Error;
  if (std::strcmp(v, "warn") == 0) return LogLevel::Warn;
  if (std::strcmp(v, "info") == 0) return LogLevel::Info;
  if (std::strcmp(v, "debug") == 0) return LogLevel::Debug;
  return LogLevel::Warn;
}

LogLevel log_threshold() {
  static const LogLevel level = parse_log_env();
  return level;
}

void log_message(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

void Diagnostics::note(std::string category, std::string file, int line, std::string message) {
  items.push_back({Diagnostic::Severity::Note, std::move(category), std::move(file), line,
                   std::move(message)});
}

void Diagnostics::warning(std::string category, std::string file, int line, std::string message) {
  log_warn(category + ": " + file + (line ? ":" + std::to_string(line) : "") + ": " + message);
  items.push_back({Diagnostic::Severity::Warning, std::move(category), std::move(file), line,
                   std::move(message)});
}

void Diagnostics::error(std::string category, std::string file, int line, std::string message) {
  log_error(category + ": " + file + (line ? ":" + std::to_string(line) : "") + ": " + message);
  items.push_back({Diagnostic::Severity::Error, std::move(category), std::move(file), line,
                   std::move(message)});
}

bool Diagnostics::has_errors() const {
  for (const auto& d : items)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

std::size_t Diagnostics::count(const std::string& category) const {
  std::size_t n = 0;
  for (const auto& d : items)
    if (d.category == category) ++n;
  return n;
}

}  // namespace smelldep
