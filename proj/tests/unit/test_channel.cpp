#include <doctest.h>

#include <cmath>

#include "mmshare/channel.hpp"
#include "mmshare/rng.hpp"

using namespace mmshare;

namespace {

const AntennaPattern kBsPattern{20.0, -10.0, 5.0};
const AntennaPattern kUePattern{10.0, -10.0, 30.0};

// Independent dB-domain recomputation of the channel power gain.
double oracle_gain_db_domain(const LinkState& link) {
  if (link.link_class == LinkClass::Outage) return 0.0;
  const double h_db = -(link.path_loss_db + link.shadowing_db) +
                      10.0 * std::log10(link.fading_power_gain);
  return std::pow(10.0, h_db / 10.0);
}

}  // namespace

TEST_CASE("antenna gain: boresight, off-lobe and boundary") {
  CHECK(antenna_gain(kBsPattern, 0.0) == doctest::Approx(100.0));       // 20 dB
  CHECK(antenna_gain(kBsPattern, 10.0) == doctest::Approx(0.1));        // -10 dB back lobe
  CHECK(antenna_gain(kBsPattern, 2.5) == doctest::Approx(100.0));       // boundary is main lobe
  CHECK(antenna_gain(kBsPattern, -2.5) == doctest::Approx(100.0));
  CHECK(antenna_gain(kBsPattern, 2.5000001) == doctest::Approx(0.1));
  CHECK(antenna_gain(kUePattern, 15.0) == doctest::Approx(10.0));
  CHECK(antenna_gain(kUePattern, 180.0) == doctest::Approx(0.1));
  // angles outside (-180, 180] are folded before the lobe test
  CHECK(antenna_gain(kBsPattern, 359.0) == doctest::Approx(100.0));
}

TEST_CASE("class probabilities: nonnegative and summing to one on a distance grid") {
  const ChannelParams params;
  for (double d = 1.0; d <= 2000.0; d += 7.3) {
    const ClassProbabilities p = class_probabilities(d, params);
    CHECK(p.outage >= 0.0);
    CHECK(p.los >= 0.0);
    CHECK(p.nlos >= -1e-15);
    CHECK(p.outage + p.los + p.nlos == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("class probabilities: short links are LOS, never outage") {
  const ChannelParams params;
  const ClassProbabilities p = class_probabilities(1e-3, params);
  CHECK(p.outage == 0.0);
  CHECK(p.los == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("classify_link: empirical frequencies match the closed-form distribution") {
  const ChannelParams params;
  const double d = 180.0;  // all three classes have mass here
  const ClassProbabilities p = class_probabilities(d, params);
  const int kDraws = 1000000;
  SplitMix64 rng(99);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < kDraws; ++i) {
    ++counts[static_cast<int>(classify_link(d, params, rng))];
  }
  const double expected[3] = {p.los, p.nlos, p.outage};  // enum order: Los, Nlos, Outage
  for (int k = 0; k < 3; ++k) {
    const double freq = static_cast<double>(counts[k]) / kDraws;
    const double sigma = std::sqrt(expected[k] * (1.0 - expected[k]) / kDraws);
    CHECK(std::abs(freq - expected[k]) < 3.0 * sigma);
  }
}

TEST_CASE("classify_link: certain outage stays outage") {
  ChannelParams params;
  params.outage_offset = -1e9;  // p_out == 1 at any distance
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(classify_link(50.0, params, rng) == LinkClass::Outage);
  }
}

TEST_CASE("link_power_gain: outage is zero, dB identity holds") {
  LinkState link;
  link.link_class = LinkClass::Outage;
  CHECK(link_power_gain(link) == 0.0);

  link.link_class = LinkClass::Los;
  link.path_loss_db = 110.0;
  link.shadowing_db = 0.0;
  link.fading_power_gain = 1.0;
  CHECK(link_power_gain(link) == doctest::Approx(1e-11).epsilon(1e-12));
}

TEST_CASE("link_power_gain: matches a dB-domain recomputation on random links") {
  SplitMix64 rng(123);
  for (int i = 0; i < 2000; ++i) {
    LinkState link;
    link.link_class = rng.u01() < 0.5 ? LinkClass::Los : LinkClass::Nlos;
    link.path_loss_db = 60.0 + 80.0 * rng.u01();
    link.shadowing_db = 16.0 * (rng.u01() - 0.5);
    link.fading_power_gain = keyed_exp(rng());
    link.distance_m = 1.0 + 400.0 * rng.u01();
    const double expected = oracle_gain_db_domain(link);
    CHECK(link_power_gain(link) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("data_rate: stock configuration reproduces the hand-computed budget") {
  // Hand budget: signal 30 dBm + 30 dB gains - 3.0103 dB back-off - 110 dB path
  // = -53.0103 dBm; noise -174 + 90 + 7 = -77 dBm; SNR 23.9897 dB -> 6.38 Gbit/s.
  const RateConfig cfg;
  CHECK(noise_power_mw(cfg) == doctest::Approx(std::pow(10.0, -7.7)).epsilon(1e-12));
  const double r = data_rate_bps(1e-11, 0.0, cfg, 1000.0);
  const double snr_db = (30.0 + 30.0 + 10.0 * std::log10(0.5) - 110.0) - (-77.0);
  const double oracle = 0.8e9 * std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
  CHECK(r == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(r == doctest::Approx(6.38e9).epsilon(1e-3));
}

TEST_CASE("data_rate: limits and monotonicity") {
  const RateConfig cfg;
  CHECK(data_rate_bps(0.0, 0.0, cfg, 1000.0) == 0.0);
  CHECK(data_rate_bps(1e-11, 1e12, cfg, 1000.0) < 1.0);  // interference-dominated

  double prev = -1.0;
  for (double h = 1e-14; h < 1e-6; h *= 10.0) {
    const double r = data_rate_bps(h, 0.0, cfg, 1000.0);
    CHECK(r > prev);
    prev = r;
  }
  prev = data_rate_bps(1e-11, 0.0, cfg, 1000.0) + 1.0;
  for (double y = 1e-12; y < 1e-3; y *= 10.0) {
    const double r = data_rate_bps(1e-11, y, cfg, 1000.0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("data_rate: overhead 0 and loss 1 recover Shannon capacity") {
  RateConfig cfg;
  cfg.overhead = 0.0;
  cfg.loss_factor = 1.0;
  const double h = 3e-11;
  const double snr = dbm_to_mw(cfg.tx_power_dbm) * 1000.0 * h / noise_power_mw(cfg);
  CHECK(data_rate_bps(h, 0.0, cfg, 1000.0) ==
        doctest::Approx(cfg.bandwidth_hz * std::log2(1.0 + snr)).epsilon(1e-12));
}

TEST_CASE("interference: empty set and noise-limited mode are zero") {
  const Point user{0.0, 0.0};
  const Point serving{100.0, 0.0};
  CHECK(interference_power_mw(user, serving, {}, kBsPattern, kUePattern, 1000.0) == 0.0);

  InterferencePath path{{0.0, 200.0}, {0.0, 300.0}, 1e-10};
  const std::vector<InterferencePath> paths{path};
  CHECK(interference_power_mw(user, serving, paths, kBsPattern, kUePattern, 1000.0, true) == 0.0);
}

TEST_CASE("interference: single interferer matches the hand product") {
  // Victim at origin looks along +x to its serving BS. Interferer sits on +y,
  // beamformed straight down at the victim (target on the far side), so the
  // interferer's main lobe faces the victim while the victim's pattern sees it
  // 90 degrees off boresight (back lobe).
  const Point user{0.0, 0.0};
  const Point serving{100.0, 0.0};
  InterferencePath path;
  path.bs_pos = {0.0, 200.0};
  path.bs_target_pos = {0.0, -50.0};
  path.power_gain = 2.5e-11;
  const std::vector<InterferencePath> paths{path};
  const double y =
      interference_power_mw(user, serving, paths, kBsPattern, kUePattern, 1000.0);
  // P * G_bs(main) * G_ue(back) * H = 1000 * 100 * 0.1 * 2.5e-11
  CHECK(y == doctest::Approx(1000.0 * 100.0 * 0.1 * 2.5e-11).epsilon(1e-12));

  // Same geometry but the interferer aims away from the victim: back lobe both sides.
  path.bs_target_pos = {0.0, 500.0};
  const std::vector<InterferencePath> paths2{path};
  const double y2 =
      interference_power_mw(user, serving, paths2, kBsPattern, kUePattern, 1000.0);
  CHECK(y2 == doctest::Approx(1000.0 * 0.1 * 0.1 * 2.5e-11).epsilon(1e-12));
}
