#include "smelldep/support/glob.hpp"

namespace smelldep {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Classic two-pointer wildcard match for one segment: '*' any run, '?' one char.
static bool segment_match(const std::string& pat, const std::string& text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == text[t])) {
      ++p, ++t;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

static bool segments_match(const std::vector<std::string>& pat, std::size_t pi,
                           const std::vector<std::string>& segs, std::size_t si) {
  while (pi < pat.size()) {
    if (pat[pi] == "**") {
      // Collapse runs of '**' and try every suffix split.
      while (pi < pat.size() && pat[pi] == "**") ++pi;
      if (pi == pat.size()) return true;
      for (std::size_t k = si; k <= segs.size(); ++k)
        if (segments_match(pat, pi, segs, k)) return true;
      return false;
    }
    if (si == segs.size() || !segment_match(pat[pi], segs[si])) return false;
    ++pi, ++si;
  }
  return si == segs.size();
}

bool glob_match(const std::string& pattern, const std::string& path) {
  std::vector<std::string> pat = split_path(pattern);
  std::vector<std::string> segs = split_path(path);
  if (pat.empty()) return false;
  if (segments_match(pat, 0, segs, 0)) return true;
  // Bare patterns also match by basename.
  if (pat.size() == 1 && !segs.empty()) return segment_match(pat[0], segs.back());
  return false;
}

bool glob_match_any(const std::vector<std::string>& patterns, const std::string& path) {
  for (const auto& p : patterns)
    if (glob_match(p, path)) return true;
  return false;
}

}  // namespace smelldep
