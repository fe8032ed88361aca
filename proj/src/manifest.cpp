#include "glasslab/manifest.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "glasslab/csv.hpp"

namespace glasslab {

std::string RunManifest::to_json_text() const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = nlohmann::json::parse(config_json.empty() ? "{}" : config_json);
  j["master_seed"] = master_seed;
  j["version"] = version;
  j["outputs"] = output_checksums;
  j["wall_seconds"] = wall_seconds;
  j["budget_note"] = budget_note;
  return j.dump(2);
}

RunManifest RunManifest::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.config_json = j.at("config").dump();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.version = j.value("version", "");
  if (j.contains("outputs"))
    m.output_checksums =
        j.at("outputs").get<std::map<std::string, std::string>>();
  m.wall_seconds = j.value("wall_seconds", 0.0);
  m.budget_note = j.value("budget_note", "");
  return m;
}

void RunManifest::save(const std::string& path) const {
  write_file_atomic(path, to_json_text() + "\n");
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open manifest " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_json_text(ss.str());
}

void emit_output(RunManifest& man, const std::string& path,
                 const std::string& content) {
  write_file_atomic(path, content);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a64(content));
  man.output_checksums[path] = buf;
}

}  // namespace glasslab
