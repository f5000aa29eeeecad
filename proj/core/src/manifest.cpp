#include "mmshare/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mmshare {

namespace {

using nlohmann::json;

json base_json(const RunManifest& m) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["schema_version"] = m.schema_version;
  j["config_digest"] = m.config_digest;
  j["resolved_config"] = m.resolved_config;
  j["seed"] = m.seed;
  j["parameters"] = m.parameters;
  return j;
}

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace

std::string RunManifest::to_json() const { return base_json(*this).dump(2); }

std::string RunManifest::to_json_with_timestamp() const {
  json j = base_json(*this);
  j["created_at"] = utc_now_iso8601();
  return j.dump(2);
}

RunManifest RunManifest::from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.schema_version = j.at("schema_version").get<std::string>();
  m.config_digest = j.at("config_digest").get<std::string>();
  m.resolved_config = j.at("resolved_config").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace mmshare
