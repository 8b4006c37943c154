#pragma once

#include <string>
#include <vector>

#include "smelldep/model/code_model.hpp"

namespace smelldep::model {

struct ProjectSpec {
  std::string id;
  std::string root;  // absolute, or relative to the manifest's directory
  std::vector<std::string> include;  // globs; default: every .java file
  std::vector<std::string> exclude;  // globs, added to the defaults
};

struct CorpusManifest {
  std::vector<ProjectSpec> projects;
  std::vector<std::string> exclude;  // corpus-wide exclusion globs
};

// Loads a manifest JSON file:
//   { "projects": [ {"id": "...", "root": "...",
//                    "include": [...], "exclude": [...] } ],
//     "exclude": [ ... ] }
// Relative roots are resolved against the manifest's directory.
// Throws std::runtime_error on malformed input or duplicate project ids.
CorpusManifest load_manifest(const std::string& path);

// The built-in production-code filter: test/example/vendored/generated
// trees and test-named files. Always applied, before manifest globs.
const std::vector<std::string>& default_exclude_globs();

// Applies the default and manifest exclusion globs to project-relative
// paths; keeps order. Pure — no filesystem access.
std::vector<std::string> filter_production_code(const std::vector<std::string>& paths,
                                                const CorpusManifest& manifest,
                                                const ProjectSpec& project);

// Walks project.root for .java files (sorted, project-relative paths),
// filters them, and reads the survivors. Throws std::runtime_error when the
// root is missing or unreadable.
std::vector<SourceFile> load_project_sources(const CorpusManifest& manifest,
                                             const ProjectSpec& project);

}  // namespace smelldep::model
