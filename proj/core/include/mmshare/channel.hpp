#pragma once

#include <span>

#include "mmshare/geometry.hpp"
#include "mmshare/rng.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

// Two-level directivity pattern: main lobe of width beamwidth_deg, back lobe
// everywhere else. The main-lobe boundary |angle| == beamwidth/2 counts as
// main lobe.
struct AntennaPattern {
  double main_lobe_db = 0.0;
  double back_lobe_db = 0.0;
  double beamwidth_deg = 360.0;

  double main_lobe_linear() const { return db_to_linear(main_lobe_db); }
  double back_lobe_linear() const { return db_to_linear(back_lobe_db); }
};

// Linear power gain at a given offset from boresight.
double antenna_gain(const AntennaPattern& pattern, double angle_deg);

enum class LinkClass { Los, Nlos, Outage };

struct PathLossClassParams {
  double intercept_db = 0.0;
  double slope = 2.0;              // PL(d) = intercept + 10 * slope * log10(d)
  double shadow_sigma_db = 0.0;    // lognormal shadowing, per-class sigma
};

// Distance-dependent LOS/NLOS/outage channel statistics:
//   p_out(d)  = max(0, 1 - exp(-d/outage_scale_m + outage_offset))
//   p_los(d)  = (1 - p_out(d)) * exp(-d/los_scale_m)
//   p_nlos(d) = 1 - p_out(d) - p_los(d)
// Defaults are the 73 GHz urban measurement fit used throughout.
struct ChannelParams {
  double outage_scale_m = 30.0;
  double outage_offset = 5.2;
  double los_scale_m = 67.1;
  PathLossClassParams los{69.8, 2.0, 5.8};
  PathLossClassParams nlos{86.6, 2.45, 8.0};
};

struct ClassProbabilities {
  double outage = 0.0;
  double los = 0.0;
  double nlos = 0.0;
};

ClassProbabilities class_probabilities(double distance_m, const ChannelParams& params);

// Draws the link class from the three-way distribution at this distance.
// The single-uniform variant maps u through the cumulative order
// (outage, LOS, NLOS) and is what keyed per-link draws use.
LinkClass classify_link(double distance_m, const ChannelParams& params, double u01);
LinkClass classify_link(double distance_m, const ChannelParams& params, SplitMix64& rng);

double path_loss_db(double distance_m, const PathLossClassParams& cls);

struct LinkState {
  LinkClass link_class = LinkClass::Outage;
  double path_loss_db = 0.0;
  double shadowing_db = 0.0;
  double fading_power_gain = 1.0;  // unit-mean exponential
  double distance_m = 0.0;
};

// Channel power gain H (linear, unitless). Zero for outage links.
double link_power_gain(const LinkState& link);

struct RateConfig {
  double bandwidth_hz = 1e9;
  double overhead = 0.2;          // fraction of airtime lost to overhead
  double loss_factor = 0.5;       // SNR back-off fitting a PHY to capacity
  double tx_power_dbm = 30.0;
  double noise_figure_db = 7.0;
  double noise_psd_dbm_hz = -174.0;
};

// Thermal noise power over the configured bandwidth, in mW.
double noise_power_mw(const RateConfig& cfg);

// Achievable rate in bit/s:
//   R = (1 - overhead) * W * log2(1 + loss_factor * P * G * H / (N + Y))
// with P the transmit power (mW), G the combined tx/rx antenna gain on the
// serving path, N the noise power and Y the interference power (mW).
double data_rate_bps(double channel_power_gain, double interference_mw, const RateConfig& cfg,
                     double directional_gain_linear);

// One interfering transmission as seen by a victim user: the interfering BS
// position, the position of the user that BS is currently serving (which
// fixes its boresight), and the interferer->victim channel power gain.
struct InterferencePath {
  Point bs_pos;
  Point bs_target_pos;
  double power_gain = 0.0;
};

// Aggregate interference at the victim, in mW. Both sides use their serving
// link as boresight: the victim points at its serving BS, each interferer at
// its own scheduled user. Returns 0 in noise-limited mode.
double interference_power_mw(const Point& user_pos, const Point& serving_bs_pos,
                             std::span<const InterferencePath> paths,
                             const AntennaPattern& bs_pattern, const AntennaPattern& ue_pattern,
                             double tx_power_mw, bool noise_limited = false);

}  // namespace mmshare
