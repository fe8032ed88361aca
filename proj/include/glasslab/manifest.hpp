#pragma once

#include <map>
#include <string>

namespace glasslab {

inline constexpr const char* kToolVersion = "glasslab 0.1.0";

// Machine-readable record of one CLI run: the resolved configuration, seed,
// checksums of every output file, and timing. Re-running the same command
// with the same seed reproduces the outputs byte for byte.
struct RunManifest {
  std::string command;
  std::string config_json;  // resolved configuration
  std::uint64_t master_seed = 0;
  std::string version = kToolVersion;
  std::map<std::string, std::string> output_checksums;  // file -> fnv1a64 hex
  double wall_seconds = 0.0;
  std::string budget_note;

  std::string to_json_text() const;
  static RunManifest from_json_text(const std::string& text);
  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

// Writes content, records its checksum into the manifest.
void emit_output(RunManifest& man, const std::string& path,
                 const std::string& content);

}  // namespace glasslab
