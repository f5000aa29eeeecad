#include "mmshare/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mmshare {

namespace {

using nlohmann::json;

std::string csv_field(double v) { return format_double(v); }

std::string ci_field(const MetricEstimate& e) {
  return e.ci_valid ? format_double(e.ci_half_width) : std::string();
}

void append_campaign_rows(std::ostringstream& out, SharingRegime regime,
                          std::optional<double> psi1, const SimMetrics& m) {
  const std::string regime_str = to_string(regime);
  const std::string psi_str = psi1 ? format_double(*psi1) : std::string();
  for (int i = 0; i < 2; ++i) {
    out << regime_str << ',' << psi_str << ',' << (i + 1) << ','
        << csv_field(m.user_tput_bps[i].mean) << ',' << ci_field(m.user_tput_bps[i]) << ','
        << csv_field(m.cell_tput_bps[i].mean) << ',' << ci_field(m.cell_tput_bps[i])
        << ",,," << m.drops << ',' << m.slots << '\n';
  }
  out << regime_str << ',' << psi_str << ",total,,,,,"
      << csv_field(m.total_cell_tput_bps.mean) << ',' << ci_field(m.total_cell_tput_bps) << ','
      << m.drops << ',' << m.slots << '\n';
}

RunManifest make_manifest(const AppConfig& config, const std::string& subcommand,
                          const std::string& schema_version,
                          std::map<std::string, std::string> parameters) {
  RunManifest m;
  m.subcommand = subcommand;
  m.schema_version = schema_version;
  m.config_digest = config_digest(config);
  m.resolved_config = resolved_text(config);
  m.seed = config.sim.base_seed;
  m.parameters = std::move(parameters);
  return m;
}

CommandResult write_result(const std::string& out_path, const std::string& content,
                           const RunManifest& manifest) {
  CommandResult result;
  result.result_path = out_path;
  result.manifest_path = out_path + ".manifest.json";
  write_text_file(result.result_path, content);
  write_text_file(result.manifest_path, manifest.to_json_with_timestamp() + "\n");
  return result;
}

json outcome_json(const MarketOutcome& o) {
  json j;
  j["regime"] = to_string(o.regime);
  j["prices"] = {{"p1", o.p1}, {"p2", o.p2}};
  j["marginal_consumers"] = {{"lower_raw", o.marginal.lower_raw},
                             {"upper_raw", o.marginal.upper_raw},
                             {"lower", o.marginal.lower},
                             {"upper", o.marginal.upper}};
  j["market_shares"] = {{"nsp1", o.share1}, {"nsp2", o.share2}};
  j["subscribers"] = {{"nsp1", o.subscribers1}, {"nsp2", o.subscribers2}};
  j["profits"] = {{"nsp1", o.profit1}, {"nsp2", o.profit2}};
  j["corner"] = o.corner;
  return j;
}

}  // namespace

std::string simulate_csv_rows(SharingRegime regime, std::optional<double> psi1,
                              const SimMetrics& metrics) {
  std::ostringstream out;
  append_campaign_rows(out, regime, psi1, metrics);
  return out.str();
}

CommandResult cmd_simulate(const AppConfig& config, SharingRegime regime,
                           std::optional<double> psi1, const std::string& out_path) {
  config.sim.validate();
  if (regime == SharingRegime::WeightedSharing && !psi1) {
    throw std::invalid_argument("weighted sharing requires --psi1");
  }
  if (psi1 && (*psi1 < 0.0 || *psi1 > 1.0)) {
    throw std::invalid_argument("psi1 must lie in [0, 1]");
  }
  WeightPolicy policy{regime, psi1.value_or(0.5)};
  const SimMetrics metrics = run_campaign(config.sim, policy);

  std::ostringstream body;
  body << kSimulateCsvHeader << '\n';
  append_campaign_rows(body, regime, regime == SharingRegime::WeightedSharing ? psi1 : std::nullopt,
                       metrics);

  std::map<std::string, std::string> params{{"regime", to_string(regime)}};
  if (regime == SharingRegime::WeightedSharing) params["psi1"] = format_double(*psi1);
  return write_result(out_path, body.str(),
                      make_manifest(config, "simulate", kSimulateSchemaVersion, std::move(params)));
}

CommandResult cmd_sweep(const AppConfig& config, const std::string& out_path) {
  config.sim.validate();
  const PsiSweep sweep = sweep_psi(config.sim);

  std::ostringstream body;
  body << kSimulateCsvHeader << '\n';
  append_campaign_rows(body, SharingRegime::NoSharing, std::nullopt, sweep.no_sharing);
  append_campaign_rows(body, SharingRegime::EqualSharing, std::nullopt, sweep.equal_sharing);
  for (const auto& [psi, metrics] : sweep.weighted) {
    append_campaign_rows(body, SharingRegime::WeightedSharing, psi, metrics);
  }
  return write_result(out_path, body.str(), make_manifest(config, "sweep", kSweepSchemaVersion, {}));
}

CommandResult cmd_game(const AppConfig& config, SharingRegime regime, bool verify,
                       const std::string& out_path) {
  const MarketOutcome outcome = solve_market(config.market, regime);

  json j = outcome_json(outcome);
  j["market"] = {{"n1", config.market.n1},       {"n2", config.market.n2},
                 {"c1", config.market.c1},       {"c2", config.market.c2},
                 {"mu", config.market.mu},       {"omega_hat", config.market.omega_hat},
                 {"psi1", config.market.psi1},   {"consumer_mass", config.market.consumer_mass}};
  const RunManifest manifest =
      make_manifest(config, "game", kGameSchemaVersion,
                    {{"regime", to_string(regime)}, {"verify", verify ? "true" : "false"}});
  if (verify) {
    constexpr double kResolution = 1e-4;
    const auto [g1, g2] = numeric_equilibrium(config.market, regime, kResolution);
    j["verify"] = {{"grid_resolution", kResolution},
                   {"p1_grid", g1},
                   {"p2_grid", g2},
                   {"p1_delta", outcome.p1 - g1},
                   {"p2_delta", outcome.p2 - g2}};
  }
  j["manifest"] = json::parse(manifest.to_json());
  return write_result(out_path, j.dump(2) + "\n", manifest);
}

CommandResult cmd_region(const AppConfig& config, double resolution, const std::string& out_path) {
  const std::vector<RegionCell> cells = mutual_benefit_region(resolution);
  std::ostringstream body;
  body << kRegionCsvHeader << '\n';
  for (const RegionCell& cell : cells) {
    body << format_double(cell.n1) << ',' << format_double(cell.n2) << ','
         << format_double(cell.interval.psi_min) << ','
         << (cell.interval.has_real_bound ? format_double(cell.interval.psi_max) : std::string())
         << ',' << (cell.interval.beneficial ? "yes" : "no") << '\n';
  }
  return write_result(out_path, body.str(),
                      make_manifest(config, "region", kRegionSchemaVersion,
                                    {{"resolution", format_double(resolution)}}));
}

CommandResult cmd_rerun(const std::string& manifest_path, const std::string& out_path) {
  const RunManifest manifest = RunManifest::from_json(read_text_file(manifest_path));
  const AppConfig config = parse_config(manifest.resolved_config);
  if (config_digest(config) != manifest.config_digest) {
    throw std::runtime_error("manifest config digest mismatch; refusing to rerun " +
                             manifest_path);
  }
  const auto& params = manifest.parameters;
  if (manifest.subcommand == "simulate") {
    const SharingRegime regime = regime_from_string(params.at("regime"));
    std::optional<double> psi1;
    if (const auto it = params.find("psi1"); it != params.end()) {
      psi1 = std::stod(it->second);
    }
    return cmd_simulate(config, regime, psi1, out_path);
  }
  if (manifest.subcommand == "sweep") {
    return cmd_sweep(config, out_path);
  }
  if (manifest.subcommand == "game") {
    return cmd_game(config, regime_from_string(params.at("regime")),
                    params.at("verify") == "true", out_path);
  }
  if (manifest.subcommand == "region") {
    return cmd_region(config, std::stod(params.at("resolution")), out_path);
  }
  throw std::runtime_error("manifest names unknown subcommand '" + manifest.subcommand + "'");
}

}  // namespace mmshare
