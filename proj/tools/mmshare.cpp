// Command-line front end: configuration ingestion, experiment subcommands and
// machine-readable result emission. Exit codes: 0 success, 1 validation
// error, 2 runtime error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mmshare/config.hpp"
#include "mmshare/report.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> slots;
  bool noise_limited = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Configuration file (key = value sections)");
  cmd->add_option("--seed", args.seed, "Override sim.base_seed");
  cmd->add_option("--drops", args.drops, "Override sim.num_drops");
  cmd->add_option("--slots", args.slots, "Override sim.slots_per_drop");
  cmd->add_flag("--noise-limited", args.noise_limited,
                "Zero interference regardless of sim.interference_mode");
}

mmshare::AppConfig resolve_config(const CommonArgs& args) {
  mmshare::AppConfig config = args.config_path.empty()
                                  ? mmshare::parse_config("")
                                  : mmshare::load_config(args.config_path);
  if (args.seed) config.sim.base_seed = *args.seed;
  if (args.drops) config.sim.num_drops = *args.drops;
  if (args.slots) config.sim.slots_per_drop = *args.slots;
  if (args.noise_limited) config.sim.interference_mode = mmshare::InterferenceMode::NoiseLimited;
  config.sim.validate();
  config.market.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave base-station sharing simulator and duopoly pricing solver"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string regime_str = "none";
  double psi1 = -1.0;
  bool verify = false;
  double resolution = 0.01;
  std::string out_path;
  std::string manifest_path;

  CLI::App* simulate = app.add_subcommand("simulate", "Run one campaign and write a CSV");
  add_common(simulate, common);
  simulate->add_option("--regime", regime_str, "Sharing regime: none, equal or weighted")
      ->check(CLI::IsMember({"none", "equal", "weighted"}));
  simulate->add_option("--psi1", psi1, "NSP 1 airtime weight (weighted regime)");
  simulate->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "No-sharing and equal-sharing baselines plus a weighted psi1 sweep");
  add_common(sweep, common);
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* game = app.add_subcommand("game", "Solve the sequential-pricing duopoly");
  add_common(game, common);
  game->add_option("--regime", regime_str, "Sharing regime: none, equal or weighted")
      ->check(CLI::IsMember({"none", "equal", "weighted"}));
  game->add_option("--psi1", psi1, "Override market.psi1");
  game->add_flag("--verify", verify, "Cross-check closed forms against the grid oracle");
  game->add_option("--out", out_path, "Output JSON path")->required();

  CLI::App* region = app.add_subcommand(
      "region", "Mutual-benefit region of weighted sharing over (n1, n2)");
  add_common(region, common);
  region->add_option("--resolution", resolution, "Grid step for n1 and n2");
  region->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* rerun = app.add_subcommand("rerun", "Re-execute a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "Path to a .manifest.json file")->required();
  rerun->add_option("--out", out_path, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11's own codes collapse onto the documented contract: 0 for
    // --help/--version, 1 for any argument problem.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    mmshare::CommandResult result;
    if (simulate->parsed()) {
      const auto config = resolve_config(common);
      const auto regime = mmshare::regime_from_string(regime_str);
      std::optional<double> psi;
      if (psi1 >= 0.0) psi = psi1;
      result = mmshare::cmd_simulate(config, regime, psi, out_path);
    } else if (sweep->parsed()) {
      result = mmshare::cmd_sweep(resolve_config(common), out_path);
    } else if (game->parsed()) {
      auto config = resolve_config(common);
      if (psi1 >= 0.0) config.market.psi1 = psi1;
      result = mmshare::cmd_game(config, mmshare::regime_from_string(regime_str), verify, out_path);
    } else if (region->parsed()) {
      result = mmshare::cmd_region(resolve_config(common), resolution, out_path);
    } else if (rerun->parsed()) {
      result = mmshare::cmd_rerun(manifest_path, out_path);
    }
    std::cout << "wrote " << result.result_path << "\n";
    std::cout << "wrote " << result.manifest_path << "\n";
    return 0;
  } catch (const mmshare::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
