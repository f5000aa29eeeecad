#pragma once

#include <optional>
#include <string>

#include "mmshare/config.hpp"
#include "mmshare/duopoly.hpp"
#include "mmshare/manifest.hpp"
#include "mmshare/simengine.hpp"

namespace mmshare {

// Result schema strings. Changing a column set requires bumping the
// corresponding version.
inline constexpr const char* kSimulateCsvHeader =
    "regime,psi1,nsp,avg_user_tput_bps,ci_user,avg_cell_tput_bps,ci_cell,"
    "total_cell_tput_bps,ci_total,drops,slots";
inline constexpr const char* kSimulateSchemaVersion = "simulate-csv-v1";
inline constexpr const char* kSweepSchemaVersion = "sweep-csv-v1";
inline constexpr const char* kRegionCsvHeader = "n1,n2,psi_min,psi_max,beneficial";
inline constexpr const char* kRegionSchemaVersion = "region-csv-v1";
inline constexpr const char* kGameSchemaVersion = "game-json-v1";

// Rows for one campaign: nsp 1, nsp 2, then a total row. psi1 is emitted only
// for the weighted regime.
std::string simulate_csv_rows(SharingRegime regime, std::optional<double> psi1,
                              const SimMetrics& metrics);

// Each subcommand writes its result file at out_path plus a sibling
// "<out_path>.manifest.json". The result content is a pure function of the
// resolved configuration and parameters.
struct CommandResult {
  std::string result_path;
  std::string manifest_path;
};

CommandResult cmd_simulate(const AppConfig& config, SharingRegime regime,
                           std::optional<double> psi1, const std::string& out_path);
CommandResult cmd_sweep(const AppConfig& config, const std::string& out_path);
CommandResult cmd_game(const AppConfig& config, SharingRegime regime, bool verify,
                       const std::string& out_path);
CommandResult cmd_region(const AppConfig& config, double resolution, const std::string& out_path);

// Re-executes the subcommand recorded in a manifest file; produces
// byte-identical result files.
CommandResult cmd_rerun(const std::string& manifest_path, const std::string& out_path);

}  // namespace mmshare
