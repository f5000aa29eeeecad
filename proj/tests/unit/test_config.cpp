#include <doctest.h>

#include <string>

#include "mmshare/config.hpp"
#include "mmshare/manifest.hpp"

using namespace mmshare;

TEST_CASE("config: empty text resolves to the stock defaults") {
  const AppConfig c = parse_config("");
  CHECK(c.sim.area.width_m == 1000.0);
  CHECK(c.sim.bs_density_per_km2 == 100.0);
  CHECK(c.sim.user_density_per_km2 == 500.0);
  CHECK(c.sim.rate.bandwidth_hz == 1e9);
  CHECK(c.sim.rate.overhead == 0.2);
  CHECK(c.sim.rate.loss_factor == 0.5);
  CHECK(c.sim.rate.tx_power_dbm == 30.0);
  CHECK(c.sim.rate.noise_figure_db == 7.0);
  CHECK(c.sim.rate.noise_psd_dbm_hz == -174.0);
  CHECK(c.sim.bs_pattern.main_lobe_db == 20.0);
  CHECK(c.sim.bs_pattern.beamwidth_deg == 5.0);
  CHECK(c.sim.ue_pattern.main_lobe_db == 10.0);
  CHECK(c.sim.ue_pattern.beamwidth_deg == 30.0);
  CHECK(c.sim.gamma == 0.01);
  CHECK(c.sim.slots_per_drop == 10000);
  CHECK(c.sim.num_drops == 50);
  CHECK(c.sim.psi_grid.size() == 10);
  CHECK(c.market.n1 == 0.6);
  CHECK(c.market.n2 == 0.4);
}

TEST_CASE("config: values parse and apply") {
  const AppConfig c = parse_config(
      "[sim]\n"
      "slots_per_drop = 250\n"
      "base_seed = 42\n"
      "interference_mode = noise_limited\n"
      "psi_grid = 0.5, 0.75\n"
      "\n"
      "[rate]\n"
      "bandwidth_hz = 5e8  # half a gigahertz\n"
      "\n"
      "[market]\n"
      "psi1 = 0.7\n");
  CHECK(c.sim.slots_per_drop == 250);
  CHECK(c.sim.base_seed == 42);
  CHECK(c.sim.interference_mode == InterferenceMode::NoiseLimited);
  CHECK(c.sim.psi_grid == std::vector<double>{0.5, 0.75});
  CHECK(c.sim.rate.bandwidth_hz == 5e8);
  CHECK(c.market.psi1 == 0.7);
}

TEST_CASE("config: constraint violations name the field") {
  try {
    parse_config("[rate]\noverhead = 1.5\n");
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("rate.overhead") != std::string::npos);
  }
}

TEST_CASE("config: unknown keys and malformed lines carry line numbers") {
  try {
    parse_config("[rate]\nbandwidht_hz = 1e9\n");
    FAIL("expected rejection");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("rate.bandwidht_hz") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[typo_section]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("key_without_section = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[rate]\noverhead 0.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[rate]\noverhead = fast\n"), ConfigError);
}

TEST_CASE("config: resolved text round-trips to an identical digest") {
  AppConfig c = parse_config("");
  c.sim.base_seed = 991;
  c.sim.psi_grid = {0.5, 0.6, 0.7};
  c.market.psi1 = 0.66;
  const std::string text = resolved_text(c);
  const AppConfig reparsed = parse_config(text);
  CHECK(resolved_text(reparsed) == text);
  CHECK(config_digest(reparsed) == config_digest(c));
}

TEST_CASE("manifest: json round trip preserves every field") {
  RunManifest m;
  m.subcommand = "simulate";
  m.schema_version = "simulate-csv-v1";
  m.config_digest = "abc123";
  m.resolved_config = "[sim]\nbase_seed = 7\n";
  m.seed = 7;
  m.parameters = {{"regime", "weighted"}, {"psi1", "0.7"}};
  const RunManifest back = RunManifest::from_json(m.to_json());
  CHECK(back.subcommand == m.subcommand);
  CHECK(back.schema_version == m.schema_version);
  CHECK(back.config_digest == m.config_digest);
  CHECK(back.resolved_config == m.resolved_config);
  CHECK(back.seed == m.seed);
  CHECK(back.parameters == m.parameters);
  // The timestamped variant adds created_at but parses the same way.
  const RunManifest stamped = RunManifest::from_json(m.to_json_with_timestamp());
  CHECK(stamped.subcommand == m.subcommand);
}

TEST_CASE("format_double: shortest round-trip rendering") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(100.0) == "100");
  CHECK(format_double(-174.0) == "-174");
  CHECK(format_double(1e9) == "1e+09");
}
