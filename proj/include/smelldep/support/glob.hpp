#pragma once

#include <string>
#include <vector>

namespace smelldep {

// Glob matching over '/'-separated relative paths.
//
//   *   matches any run of characters within one path segment
//   ?   matches exactly one character within a segment
//   **  as a whole segment, matches zero or more segments
//
// Matching is anchored at both ends: "vendor/**" matches "vendor/a/b.java"
// but not "x/vendor/a.java" (use "**/vendor/**" for that). A pattern with no
// '/' matches against the basename as well as the full path, so "*Test.java"
// excludes test files anywhere in the tree.
bool glob_match(const std::string& pattern, const std::string& path);

// True if any pattern matches.
bool glob_match_any(const std::vector<std::string>& patterns, const std::string& path);

// Splits on '/' with no empty segments ("a//b" -> {"a","b"}).
std::vector<std::string> split_path(const std::string& path);

}  // namespace smelldep
