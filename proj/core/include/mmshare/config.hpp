#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "mmshare/duopoly.hpp"
#include "mmshare/simengine.hpp"

namespace mmshare {

// Configuration file problem: parse failures carry line numbers, constraint
// violations carry the section.key they name.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AppConfig {
  SimConfig sim;
  MarketParams market;
};

// Parses the line-oriented "[section]" / "key = value" format. Every key is
// optional and defaults to the stock network/market parameters; unknown
// sections or keys are rejected. An empty file yields the full default
// configuration.
AppConfig parse_config(const std::string& text);
AppConfig load_config(const std::string& path);

// Canonical serialization: every key in a fixed order, values rendered
// shortest-round-trip. parse_config(resolved_text(c)) == c, and the digest of
// the re-resolved text is identical.
std::string resolved_text(const AppConfig& config);

// FNV-1a 64 over the canonical text, hex encoded.
std::string config_digest(const AppConfig& config);

std::uint64_t fnv1a64(const std::string& data);

// Shortest round-trip decimal rendering (locale independent).
std::string format_double(double v);

}  // namespace mmshare
