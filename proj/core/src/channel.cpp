#include "mmshare/channel.hpp"

#include <cmath>

namespace mmshare {

double antenna_gain(const AntennaPattern& pattern, double angle_deg) {
  const double a = normalize_angle_deg(angle_deg);
  return std::abs(a) <= pattern.beamwidth_deg / 2.0 ? pattern.main_lobe_linear()
                                                    : pattern.back_lobe_linear();
}

ClassProbabilities class_probabilities(double distance_m, const ChannelParams& params) {
  ClassProbabilities p;
  p.outage = std::max(0.0, 1.0 - std::exp(-distance_m / params.outage_scale_m +
                                          params.outage_offset));
  p.los = (1.0 - p.outage) * std::exp(-distance_m / params.los_scale_m);
  p.nlos = 1.0 - p.outage - p.los;
  return p;
}

LinkClass classify_link(double distance_m, const ChannelParams& params, double u01) {
  const ClassProbabilities p = class_probabilities(distance_m, params);
  if (u01 < p.outage) return LinkClass::Outage;
  if (u01 < p.outage + p.los) return LinkClass::Los;
  return LinkClass::Nlos;
}

LinkClass classify_link(double distance_m, const ChannelParams& params, SplitMix64& rng) {
  return classify_link(distance_m, params, rng.u01());
}

double path_loss_db(double distance_m, const PathLossClassParams& cls) {
  return cls.intercept_db + 10.0 * cls.slope * std::log10(distance_m);
}

double link_power_gain(const LinkState& link) {
  if (link.link_class == LinkClass::Outage) return 0.0;
  return std::pow(10.0, -(link.path_loss_db + link.shadowing_db) / 10.0) *
         link.fading_power_gain;
}

double noise_power_mw(const RateConfig& cfg) {
  return db_to_linear(cfg.noise_figure_db) * dbm_to_mw(cfg.noise_psd_dbm_hz) * cfg.bandwidth_hz;
}

double data_rate_bps(double channel_power_gain, double interference_mw, const RateConfig& cfg,
                     double directional_gain_linear) {
  if (channel_power_gain <= 0.0) return 0.0;
  const double signal_mw = cfg.loss_factor * dbm_to_mw(cfg.tx_power_dbm) *
                           directional_gain_linear * channel_power_gain;
  const double sinr = signal_mw / (noise_power_mw(cfg) + interference_mw);
  return (1.0 - cfg.overhead) * cfg.bandwidth_hz * std::log2(1.0 + sinr);
}

double interference_power_mw(const Point& user_pos, const Point& serving_bs_pos,
                             std::span<const InterferencePath> paths,
                             const AntennaPattern& bs_pattern, const AntennaPattern& ue_pattern,
                             double tx_power_mw, bool noise_limited) {
  if (noise_limited) return 0.0;
  const double user_boresight = bearing_deg(user_pos, serving_bs_pos);
  double total = 0.0;
  for (const InterferencePath& path : paths) {
    if (path.power_gain <= 0.0) continue;
    const double bs_boresight = bearing_deg(path.bs_pos, path.bs_target_pos);
    const double bs_offset = normalize_angle_deg(bearing_deg(path.bs_pos, user_pos) - bs_boresight);
    const double ue_offset =
        normalize_angle_deg(bearing_deg(user_pos, path.bs_pos) - user_boresight);
    total += tx_power_mw * antenna_gain(bs_pattern, bs_offset) *
             antenna_gain(ue_pattern, ue_offset) * path.power_gain;
  }
  return total;
}

}  // namespace mmshare
