#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace mmshare {

inline constexpr const char* kToolName = "mmshare";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce a result file: the resolved configuration
// text, the subcommand and its parameters, and the seed. Result files embed
// this record (without the wall-clock timestamp, so re-runs are
// byte-identical); the sibling .manifest.json adds created_at.
struct RunManifest {
  std::string subcommand;
  std::string schema_version;
  std::string config_digest;
  std::string resolved_config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;

  // JSON object without timestamp; deterministic key order.
  std::string to_json() const;
  // to_json() plus created_at.
  std::string to_json_with_timestamp() const;

  static RunManifest from_json(const std::string& json_text);
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace mmshare
