#include "smelldep/model/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "smelldep/support/glob.hpp"
#include "smelldep/support/table.hpp"

namespace smelldep::model {

namespace fs = std::filesystem;

const std::vector<std::string>& default_exclude_globs() {
  // Directory names that conventionally hold non-production Java, plus
  // test-suffixed file names and synthetic compilation units. Extend via the
  // manifest's "exclude" lists; there is no way to switch these off short of
  // renaming, which has not been needed in practice.
  static const std::vector<std::string> globs = {
      "**/test/**",        "**/tests/**",      "**/testing/**",    "**/androidTest/**",
      "**/examples/**",    "**/example/**",    "**/samples/**",    "**/sample/**",
      "**/demo/**",        "**/demos/**",      "**/vendor/**",     "**/vendored/**",
      "**/third_party/**", "**/third-party/**", "**/thirdparty/**", "**/generated/**",
      "**/gen/**",         "**/build/**",      "**/target/**",
      "*Test.java",        "*Tests.java",      "*TestCase.java",
      "package-info.java", "module-info.java",
  };
  return globs;
}

CorpusManifest load_manifest(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("projects") || !j["projects"].is_array())
    throw std::runtime_error("manifest " + path + ": missing \"projects\" array");

  fs::path base = fs::path(path).parent_path();
  CorpusManifest m;
  std::set<std::string> seen;
  for (const auto& pj : j["projects"]) {
    ProjectSpec p;
    p.id = pj.value("id", "");
    p.root = pj.value("root", "");
    if (p.id.empty() || p.root.empty())
      throw std::runtime_error("manifest " + path + ": project needs \"id\" and \"root\"");
    if (!seen.insert(p.id).second)
      throw std::runtime_error("manifest " + path + ": duplicate project id '" + p.id + "'");
    if (fs::path(p.root).is_relative()) p.root = (base / p.root).lexically_normal().string();
    for (const auto& g : pj.value("include", std::vector<std::string>{})) p.include.push_back(g);
    for (const auto& g : pj.value("exclude", std::vector<std::string>{})) p.exclude.push_back(g);
    m.projects.push_back(std::move(p));
  }
  for (const auto& g : j.value("exclude", std::vector<std::string>{})) m.exclude.push_back(g);
  return m;
}

std::vector<std::string> filter_production_code(const std::vector<std::string>& paths,
                                                const CorpusManifest& manifest,
                                                const ProjectSpec& project) {
  std::vector<std::string> kept;
  for (const auto& p : paths) {
    if (!project.include.empty() && !glob_match_any(project.include, p)) continue;
    if (glob_match_any(default_exclude_globs(), p)) continue;
    if (glob_match_any(manifest.exclude, p)) continue;
    if (glob_match_any(project.exclude, p)) continue;
    kept.push_back(p);
  }
  return kept;
}

std::vector<SourceFile> load_project_sources(const CorpusManifest& manifest,
                                             const ProjectSpec& project) {
  fs::path root(project.root);
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw std::runtime_error("project '" + project.id + "': root is not a directory: " +
                             project.root);

  std::vector<std::string> paths;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw std::runtime_error("project '" + project.id + "': " + ec.message());
    if (!it->is_regular_file()) continue;
    if (it->path().extension() != ".java") continue;
    paths.push_back(it->path().lexically_relative(root).generic_string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<SourceFile> sources;
  for (const auto& rel : filter_production_code(paths, manifest, project))
    sources.push_back({rel, read_text_file((root / rel).string())});
  return sources;
}

}  // namespace smelldep::model
