#include "mmshare/simengine.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mmshare/rng.hpp"
#include "mmshare/stats.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

namespace {

constexpr std::uint64_t kDropTag = 0x64726f70u;      // per-drop seed stream
constexpr std::uint64_t kLinkTag = 0x6c696e6bu;      // per-link class/shadowing
constexpr std::uint64_t kFadingTag = 0x66616465u;    // per-slot fading
constexpr std::uint64_t kBoresightTag = 0x626f7265u; // slot-0 interferer targets

// Interferers whose best-case contribution falls below this fraction of the
// noise power are dropped from the per-user candidate list.
constexpr double kInterferenceFloor = 1e-4;

std::uint64_t pack_slot_link(int slot, int user, int bs) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(slot)) << 40) ^
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(user)) << 20) ^
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(bs));
}

struct LinkStatic {
  double base_gain = 0.0;  // 10^(-(PL + shadowing)/10); 0 for outage
  bool outage = true;
};

// Class and shadowing are drawn once per drop, keyed by (drop, user, bs) so
// the same pair sees the same link in every sharing regime.
LinkStatic draw_link_static(std::uint64_t link_base, int user, int bs, double dist,
                            const ChannelParams& channel) {
  const std::uint64_t key = link_base ^ pack_slot_link(0, user, bs);
  LinkStatic link;
  const LinkClass cls = classify_link(dist, channel, keyed_u01(mix64(key)));
  if (cls == LinkClass::Outage) return link;
  const PathLossClassParams& p = cls == LinkClass::Los ? channel.los : channel.nlos;
  const double pl = path_loss_db(dist, p) + p.shadow_sigma_db * keyed_normal(mix64(key ^ 0x73u));
  link.base_gain = std::pow(10.0, -pl / 10.0);
  link.outage = false;
  return link;
}

struct Interferer {
  int bs = 0;
  double gain_noslot = 0.0;     // P * G_ue * base_gain, missing only G_bs and fading
  double bs_to_user_deg = 0.0;  // static geometry, compared against the BS boresight
};

}  // namespace

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(area.width_m > 0.0) || !(area.height_m > 0.0)) fail("area dimensions must be positive");
  if (bs_density_per_km2 < 0.0) fail("deployment.bs_density_per_km2 must be nonnegative");
  if (user_density_per_km2 < 0.0) fail("deployment.user_density_per_km2 must be nonnegative");
  if (n1 < 0.0 || n1 > 1.0) fail("deployment.n1 must lie in [0, 1]");
  if (!(rate.bandwidth_hz > 0.0)) fail("rate.bandwidth_hz must be positive");
  if (rate.overhead < 0.0 || rate.overhead >= 1.0) {
    fail("rate.overhead must satisfy 0 <= overhead < 1");
  }
  if (rate.loss_factor <= 0.0 || rate.loss_factor > 1.0) {
    fail("rate.loss_factor must satisfy 0 < loss_factor <= 1");
  }
  for (const auto* pat : {&bs_pattern, &ue_pattern}) {
    if (!(pat->beamwidth_deg > 0.0) || pat->beamwidth_deg >= 360.0) {
      fail("antenna beamwidth_deg must lie in (0, 360)");
    }
    if (pat->main_lobe_db < pat->back_lobe_db) {
      fail("antenna main_lobe_db must be at least back_lobe_db");
    }
  }
  if (gamma < 0.0) fail("scheduler.gamma must be nonnegative");
  if (slots_per_drop < 1) fail("sim.slots_per_drop must be at least 1");
  if (num_drops < 1) fail("sim.num_drops must be at least 1");
  if (psi_grid.empty()) fail("sim.psi_grid must not be empty");
  for (double psi : psi_grid) {
    if (psi < 0.0 || psi > 1.0) fail("sim.psi_grid values must lie in [0, 1]");
  }
  if (threads < 0) fail("sim.threads must be nonnegative");
  if (!(channel.outage_scale_m > 0.0)) fail("channel.outage_scale_m must be positive");
  if (!(channel.los_scale_m > 0.0)) fail("channel.los_scale_m must be positive");
}

DropMetrics run_drop(const SimConfig& config, const WeightPolicy& policy, std::uint64_t seed) {
  const Deployment dep =
      split_deployment(config.bs_density_per_km2, config.user_density_per_km2, config.n1,
                       config.area, derive_seed(seed, {kDropTag}));

  const std::vector<int> coalition =
      policy.regime == SharingRegime::NoSharing ? std::vector<int>{1} : std::vector<int>{1, 2};
  const Association assoc = associate(dep, coalition);

  DropMetrics out;
  out.unassociated_users = assoc.unassociated;

  const int num_users = static_cast<int>(dep.users.size());
  const int num_bs = static_cast<int>(dep.base_stations.size());
  const int slots = config.slots_per_drop;
  const bool full_interference = config.interference_mode == InterferenceMode::Full;

  const double tx_mw = dbm_to_mw(config.rate.tx_power_dbm);
  const double noise_mw = noise_power_mw(config.rate);
  const double boresight_gain =
      config.bs_pattern.main_lobe_linear() * config.ue_pattern.main_lobe_linear();
  const double signal_factor = config.rate.loss_factor * tx_mw * boresight_gain;
  const double rate_factor = (1.0 - config.rate.overhead) * config.rate.bandwidth_hz;
  const double inv_ln2 = 1.4426950408889634073599246810019;
  const double bs_half_beam = config.bs_pattern.beamwidth_deg / 2.0;
  const double bs_main = config.bs_pattern.main_lobe_linear();
  const double bs_back = config.bs_pattern.back_lobe_linear();

  const std::uint64_t link_base = derive_seed(seed, {kLinkTag});
  const std::uint64_t fading_base = derive_seed(seed, {kFadingTag});

  // Per-user serving link statics.
  std::vector<double> serve_gain(num_users, 0.0);
  for (int u = 0; u < num_users; ++u) {
    const int b = assoc.serving_bs[u];
    if (b < 0) continue;
    const double dist = distance(dep.users[u].pos, dep.base_stations[b].pos);
    const LinkStatic link = draw_link_static(link_base, u, b, dist, config.channel);
    serve_gain[u] = link.base_gain;
  }

  // Cells with at least one member; everything below iterates over these.
  std::vector<int> active_bs;
  std::vector<char> is_active(num_bs, 0);
  for (int b = 0; b < num_bs; ++b) {
    if (!assoc.cell_members[b].empty()) {
      active_bs.push_back(b);
      is_active[b] = 1;
    }
  }

  // Interference candidates: non-outage links from active foreign BSs whose
  // best-case contribution clears the floor. The user-side gain is static
  // because the victim's boresight (its serving BS) is fixed for the drop.
  std::vector<std::vector<Interferer>> candidates(full_interference ? num_users : 0);
  if (full_interference) {
    const double floor_mw = kInterferenceFloor * noise_mw;
    for (int u = 0; u < num_users; ++u) {
      const int serving = assoc.serving_bs[u];
      if (serving < 0) continue;
      const double user_boresight = bearing_deg(dep.users[u].pos, dep.base_stations[serving].pos);
      for (int b : active_bs) {
        if (b == serving) continue;
        const double dist = distance(dep.users[u].pos, dep.base_stations[b].pos);
        const LinkStatic link = draw_link_static(link_base, u, b, dist, config.channel);
        if (link.outage) continue;
        const double ue_offset =
            normalize_angle_deg(bearing_deg(dep.users[u].pos, dep.base_stations[b].pos) -
                                user_boresight);
        const double ue_gain = antenna_gain(config.ue_pattern, ue_offset);
        if (tx_mw * bs_main * ue_gain * link.base_gain < floor_mw) continue;
        candidates[u].push_back({b, tx_mw * ue_gain * link.base_gain,
                                 bearing_deg(dep.base_stations[b].pos, dep.users[u].pos)});
      }
    }
  }

  // Per-cell scheduler state and static angles toward each member.
  std::vector<CreditScheduler> schedulers;
  std::vector<std::vector<double>> bs_to_member_deg(num_bs);
  std::vector<int> target_ordinal(num_bs, 0);  // member currently beamformed at
  schedulers.reserve(active_bs.size());
  for (int b : active_bs) {
    const auto& members = assoc.cell_members[b];
    std::vector<int> nsps;
    nsps.reserve(members.size());
    for (int u : members) nsps.push_back(dep.users[u].nsp);
    schedulers.emplace_back(compute_weights(nsps, policy), config.gamma);
    auto& angles = bs_to_member_deg[b];
    angles.reserve(members.size());
    for (int u : members) {
      angles.push_back(bearing_deg(dep.base_stations[b].pos, dep.users[u].pos));
    }
    target_ordinal[b] = static_cast<int>(
        mix64(derive_seed(seed, {kBoresightTag, static_cast<std::uint64_t>(b)})) % members.size());
  }

  std::vector<double> served_rate_sum(num_users, 0.0);
  std::vector<double> cell_nsp_sum(static_cast<std::size_t>(num_bs) * 2, 0.0);
  std::vector<double> boresight_deg(num_bs, 0.0);
  std::vector<double> rates;
  std::vector<double> metrics;
  const double inv_bandwidth = 1.0 / config.rate.bandwidth_hz;

  for (int t = 0; t < slots; ++t) {
    if (full_interference) {
      for (int b : active_bs) boresight_deg[b] = bs_to_member_deg[b][target_ordinal[b]];
    }
    for (std::size_t ci = 0; ci < active_bs.size(); ++ci) {
      const int b = active_bs[ci];
      const auto& members = assoc.cell_members[b];
      rates.resize(members.size());
      metrics.resize(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        const int u = members[k];
        double rate = 0.0;
        if (serve_gain[u] > 0.0) {
          const double fading = keyed_exp(fading_base ^ pack_slot_link(t, u, b));
          double interference = 0.0;
          if (full_interference) {
            for (const Interferer& it : candidates[u]) {
              const double off = normalize_angle_deg(it.bs_to_user_deg - boresight_deg[it.bs]);
              const double g_bs = std::abs(off) <= bs_half_beam ? bs_main : bs_back;
              interference += it.gain_noslot * g_bs *
                              keyed_exp(fading_base ^ pack_slot_link(t, u, it.bs));
            }
          }
          const double sinr = signal_factor * serve_gain[u] * fading / (noise_mw + interference);
          rate = rate_factor * std::log1p(sinr) * inv_ln2;
        }
        rates[k] = rate;
        // The selection metric works on spectral efficiency so that the
        // credit term gamma*b is commensurate with the rate term.
        metrics[k] = rate * inv_bandwidth;
      }
      const int pick = schedulers[ci].select(metrics);
      const int winner = members[static_cast<std::size_t>(pick)];
      served_rate_sum[winner] += rates[static_cast<std::size_t>(pick)];
      cell_nsp_sum[static_cast<std::size_t>(b) * 2 +
                   static_cast<std::size_t>(dep.users[winner].nsp - 1)] +=
          rates[static_cast<std::size_t>(pick)];
      target_ordinal[b] = pick;
    }
  }

  // Per-NSP user averages over associated users.
  double user_sum[2] = {0.0, 0.0};
  for (int u = 0; u < num_users; ++u) {
    if (assoc.serving_bs[u] < 0) continue;
    const int i = dep.users[u].nsp - 1;
    user_sum[i] += served_rate_sum[u];
    ++out.associated_users[i];
  }
  const double inv_slots = 1.0 / static_cast<double>(slots);
  for (int i = 0; i < 2; ++i) {
    if (out.associated_users[i] > 0) {
      out.user_tput_bps[i] = user_sum[i] * inv_slots / out.associated_users[i];
    }
  }

  // Cell averages over non-empty cells, attributing each slot's served rate
  // to the served user's NSP; the total is their exact sum.
  out.nonempty_cells = static_cast<int>(active_bs.size());
  if (!active_bs.empty()) {
    double nsp_sum[2] = {0.0, 0.0};
    for (int b : active_bs) {
      nsp_sum[0] += cell_nsp_sum[static_cast<std::size_t>(b) * 2];
      nsp_sum[1] += cell_nsp_sum[static_cast<std::size_t>(b) * 2 + 1];
    }
    for (int i = 0; i < 2; ++i) {
      out.cell_tput_bps[i] = nsp_sum[i] * inv_slots / static_cast<double>(active_bs.size());
    }
    out.total_cell_tput_bps = out.cell_tput_bps[0] + out.cell_tput_bps[1];
  }
  return out;
}

SimMetrics aggregate_drops(const std::vector<DropMetrics>& drops, int slots_per_drop) {
  if (drops.empty()) throw std::invalid_argument("aggregate_drops needs at least one drop");
  SimMetrics out;
  out.drops = static_cast<int>(drops.size());
  out.slots = slots_per_drop;

  auto estimate = [&](auto&& get) {
    std::vector<double> xs;
    xs.reserve(drops.size());
    for (const DropMetrics& d : drops) xs.push_back(get(d));
    MetricEstimate e;
    e.mean = mean(xs);
    if (xs.size() >= 2) {
      e.ci_half_width = ci95_half_width(xs);
      e.ci_valid = true;
    }
    return e;
  };

  for (int i = 0; i < 2; ++i) {
    out.user_tput_bps[i] = estimate([i](const DropMetrics& d) { return d.user_tput_bps[i]; });
    out.cell_tput_bps[i] = estimate([i](const DropMetrics& d) { return d.cell_tput_bps[i]; });
  }
  out.total_cell_tput_bps = estimate([](const DropMetrics& d) { return d.total_cell_tput_bps; });
  double unassoc = 0.0;
  for (const DropMetrics& d : drops) unassoc += d.unassociated_users;
  out.mean_unassociated_users = unassoc / static_cast<double>(drops.size());
  return out;
}

std::vector<DropMetrics> run_campaign_drops(const SimConfig& config, const WeightPolicy& policy) {
  config.validate();
  std::vector<DropMetrics> results(static_cast<std::size_t>(config.num_drops));
  auto drop_seed = [&](int d) {
    return derive_seed(config.base_seed, {kDropTag, static_cast<std::uint64_t>(d)});
  };

  int workers = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, config.num_drops);

  if (workers == 1) {
    for (int d = 0; d < config.num_drops; ++d) {
      results[static_cast<std::size_t>(d)] = run_drop(config, policy, drop_seed(d));
    }
    return results;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int d = next.fetch_add(1); d < config.num_drops; d = next.fetch_add(1)) {
        results[static_cast<std::size_t>(d)] = run_drop(config, policy, drop_seed(d));
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return results;
}

SimMetrics run_campaign(const SimConfig& config, const WeightPolicy& policy) {
  return aggregate_drops(run_campaign_drops(config, policy), config.slots_per_drop);
}

PsiSweep sweep_psi(const SimConfig& config) {
  config.validate();
  PsiSweep sweep;
  sweep.no_sharing = run_campaign(config, {SharingRegime::NoSharing, 0.5});
  sweep.equal_sharing = run_campaign(config, {SharingRegime::EqualSharing, 0.5});
  sweep.weighted.reserve(config.psi_grid.size());
  for (double psi : config.psi_grid) {
    sweep.weighted.emplace_back(psi, run_campaign(config, {SharingRegime::WeightedSharing, psi}));
  }
  return sweep;
}

}  // namespace mmshare
