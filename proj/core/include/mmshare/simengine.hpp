#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mmshare/channel.hpp"
#include "mmshare/geometry.hpp"
#include "mmshare/scheduler.hpp"

namespace mmshare {

enum class InterferenceMode { Full, NoiseLimited };

struct SimConfig {
  Rect area{1000.0, 1000.0};
  double bs_density_per_km2 = 100.0;
  double user_density_per_km2 = 500.0;
  double n1 = 0.5;  // NSP 1's share of both densities

  AntennaPattern bs_pattern{20.0, -10.0, 5.0};
  AntennaPattern ue_pattern{10.0, -10.0, 30.0};
  RateConfig rate;
  ChannelParams channel;

  double gamma = 0.01;
  std::vector<double> psi_grid{0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};

  int slots_per_drop = 10000;
  int num_drops = 50;
  std::uint64_t base_seed = 1;
  InterferenceMode interference_mode = InterferenceMode::Full;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;  // throws std::invalid_argument naming the field
};

// Raw per-drop outputs. NSP-indexed arrays use [0] for NSP 1, [1] for NSP 2.
struct DropMetrics {
  double user_tput_bps[2] = {0.0, 0.0};   // mean over that NSP's associated users
  double cell_tput_bps[2] = {0.0, 0.0};   // per-cell rate attributed to the served user's NSP
  double total_cell_tput_bps = 0.0;       // mean served rate per (non-empty) cell
  int unassociated_users = 0;
  int associated_users[2] = {0, 0};
  int nonempty_cells = 0;
};

struct MetricEstimate {
  double mean = 0.0;
  double ci_half_width = 0.0;
  bool ci_valid = false;  // needs >= 2 drops
};

struct SimMetrics {
  MetricEstimate user_tput_bps[2];
  MetricEstimate cell_tput_bps[2];
  MetricEstimate total_cell_tput_bps;
  double mean_unassociated_users = 0.0;
  int drops = 0;
  int slots = 0;
};

// Simulates one deployment drop: samples the network, associates users under
// the policy's regime, then runs the per-cell schedulers for
// config.slots_per_drop slots with fresh fading each slot. Pure in
// (config, policy, seed).
DropMetrics run_drop(const SimConfig& config, const WeightPolicy& policy, std::uint64_t seed);

// Aggregates drops into means and 95% confidence half-widths.
SimMetrics aggregate_drops(const std::vector<DropMetrics>& drops, int slots_per_drop);

// num_drops independent drops with seeds derived from config.base_seed. The
// drop seeds do not depend on the policy, so campaigns under different
// regimes or psi values share random numbers and compare pairwise.
SimMetrics run_campaign(const SimConfig& config, const WeightPolicy& policy);
std::vector<DropMetrics> run_campaign_drops(const SimConfig& config, const WeightPolicy& policy);

struct PsiSweep {
  SimMetrics no_sharing;
  SimMetrics equal_sharing;
  std::vector<std::pair<double, SimMetrics>> weighted;  // one entry per psi grid point
};

PsiSweep sweep_psi(const SimConfig& config);

}  // namespace mmshare
