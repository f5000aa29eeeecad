#include "mmshare/geometry.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mmshare/rng.hpp"

namespace mmshare {

namespace {

constexpr std::uint64_t kBsTag = 0x6273u;    // base-station process
constexpr std::uint64_t kUserTag = 0x7565u;  // user process

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_area(const Rect& area) {
  if (!(area.width_m > 0.0) || !(area.height_m > 0.0)) {
    throw std::invalid_argument("area dimensions must be positive");
  }
}

}  // namespace

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double normalize_angle_deg(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a > 180.0) a -= 360.0;
  if (a <= -180.0) a += 360.0;
  return a;
}

double bearing_deg(const Point& a, const Point& b) {
  const double rad = std::atan2(b.y - a.y, b.x - a.x);
  return normalize_angle_deg(rad * 180.0 / kPi);
}

std::vector<Point> sample_hppp(double intensity_per_km2, const Rect& area, std::uint64_t seed) {
  if (intensity_per_km2 < 0.0) {
    throw std::invalid_argument("hPPP intensity must be nonnegative");
  }
  check_area(area);

  SplitMix64 rng(seed);
  const double mean_count = intensity_per_km2 * area.area_km2();
  std::size_t count = 0;
  if (mean_count > 0.0) {
    std::poisson_distribution<long> poisson(mean_count);
    count = static_cast<std::size_t>(poisson(rng));
  }

  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = rng.u01() * area.width_m;
    const double y = rng.u01() * area.height_m;
    points.push_back({x, y});
  }
  return points;
}

Deployment split_deployment(double total_bs_density_per_km2, double total_user_density_per_km2,
                            double n1, const Rect& area, std::uint64_t seed) {
  if (n1 < 0.0 || n1 > 1.0) {
    throw std::invalid_argument("NSP 1 fraction n1 must lie in [0, 1]");
  }
  check_area(area);

  Deployment dep;
  dep.area = area;
  const double frac[2] = {n1, 1.0 - n1};
  for (int nsp = 1; nsp <= 2; ++nsp) {
    const double f = frac[nsp - 1];
    auto bs = sample_hppp(f * total_bs_density_per_km2, area,
                          derive_seed(seed, {kBsTag, static_cast<std::uint64_t>(nsp)}));
    for (const Point& p : bs) dep.base_stations.push_back({p, nsp});
    auto ue = sample_hppp(f * total_user_density_per_km2, area,
                          derive_seed(seed, {kUserTag, static_cast<std::uint64_t>(nsp)}));
    for (const Point& p : ue) dep.users.push_back({p, nsp});
  }
  return dep;
}

Association associate(const Deployment& dep, const std::vector<int>& coalition) {
  if (coalition.empty()) {
    throw std::invalid_argument("coalition must not be empty");
  }
  auto in_coalition = [&coalition](int nsp) {
    for (int c : coalition) {
      if (c == nsp) return true;
    }
    return false;
  };

  Association assoc;
  assoc.serving_bs.assign(dep.users.size(), kUnassociated);
  assoc.cell_members.assign(dep.base_stations.size(), {});

  for (std::size_t u = 0; u < dep.users.size(); ++u) {
    const Site& user = dep.users[u];
    const bool shared = in_coalition(user.nsp);
    int best = kUnassociated;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < dep.base_stations.size(); ++b) {
      const Site& bs = dep.base_stations[b];
      const bool eligible = shared ? in_coalition(bs.nsp) : bs.nsp == user.nsp;
      if (!eligible) continue;
      const double dx = bs.pos.x - user.pos.x;
      const double dy = bs.pos.y - user.pos.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {  // strict: ties keep the lowest BS index
        best_d2 = d2;
        best = static_cast<int>(b);
      }
    }
    assoc.serving_bs[u] = best;
    if (best >= 0) {
      assoc.cell_members[best].push_back(static_cast<int>(u));
    } else {
      ++assoc.unassociated;
    }
  }
  return assoc;
}

}  // namespace mmshare
