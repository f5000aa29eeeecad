#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mmshare/geometry.hpp"

using namespace mmshare;

namespace {

const Rect kSquareKm{1000.0, 1000.0};

// Brute-force nearest eligible BS, written independently of associate():
// eligible set built the other way around, hypot distances, explicit ties.
int oracle_nearest(const Deployment& dep, std::size_t u, const std::vector<int>& coalition) {
  const Site& user = dep.users[u];
  bool user_shares = false;
  for (int c : coalition) user_shares |= (c == user.nsp);
  int best = kUnassociated;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < dep.base_stations.size(); ++b) {
    bool eligible;
    if (user_shares) {
      eligible = std::find(coalition.begin(), coalition.end(), dep.base_stations[b].nsp) !=
                 coalition.end();
    } else {
      eligible = dep.base_stations[b].nsp == user.nsp;
    }
    if (!eligible) continue;
    const double d = std::hypot(dep.base_stations[b].pos.x - user.pos.x,
                                dep.base_stations[b].pos.y - user.pos.y);
    if (d < best_d || (d == best_d && static_cast<int>(b) < best)) {
      best_d = d;
      best = static_cast<int>(b);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("hppp: zero intensity yields no points") {
  CHECK(sample_hppp(0.0, kSquareKm, 7).empty());
}

TEST_CASE("hppp: negative intensity is rejected") {
  CHECK_THROWS_AS(sample_hppp(-1.0, kSquareKm, 7), std::invalid_argument);
}

TEST_CASE("hppp: fixed seed reproduces the same point set") {
  const auto a = sample_hppp(100.0, kSquareKm, 42);
  const auto b = sample_hppp(100.0, kSquareKm, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
  const auto c = sample_hppp(100.0, kSquareKm, 43);
  CHECK(a.size() != c.size());  // different seed, different realization (w.h.p.)
}

TEST_CASE("hppp: sample mean count across 10000 seeds matches Poisson(100)") {
  const int kSeeds = 10000;
  double total = 0.0;
  for (int s = 0; s < kSeeds; ++s) {
    total += static_cast<double>(sample_hppp(100.0, kSquareKm, 1000 + s).size());
  }
  const double sample_mean = total / kSeeds;
  // Poisson(100) has sigma 10; the mean of 10^4 draws has SE 0.1.
  CHECK(std::abs(sample_mean - 100.0) < 3.0 * 10.0 / std::sqrt(kSeeds));
}

TEST_CASE("hppp: points fall inside the area") {
  const Rect area{400.0, 250.0};
  for (const Point& p : sample_hppp(500.0, area, 3)) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= area.width_m);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= area.height_m);
  }
}

TEST_CASE("split_deployment: n1 = 1 assigns everything to NSP 1") {
  const Deployment dep = split_deployment(100.0, 500.0, 1.0, kSquareKm, 5);
  CHECK(!dep.base_stations.empty());
  CHECK(!dep.users.empty());
  for (const Site& s : dep.base_stations) CHECK(s.nsp == 1);
  for (const Site& s : dep.users) CHECK(s.nsp == 1);
}

TEST_CASE("split_deployment: out-of-range n1 is rejected") {
  CHECK_THROWS_AS(split_deployment(100.0, 500.0, 1.5, kSquareKm, 5), std::invalid_argument);
  CHECK_THROWS_AS(split_deployment(100.0, 500.0, -0.1, kSquareKm, 5), std::invalid_argument);
}

TEST_CASE("split_deployment: n1 = 0.7 splits mean BS counts 70/30") {
  const int kSeeds = 2000;
  double count1 = 0.0, count2 = 0.0;
  for (int s = 0; s < kSeeds; ++s) {
    const Deployment dep = split_deployment(100.0, 0.0, 0.7, kSquareKm, 50000 + s);
    for (const Site& bs : dep.base_stations) {
      (bs.nsp == 1 ? count1 : count2) += 1.0;
    }
  }
  const double se1 = std::sqrt(70.0 / kSeeds);
  const double se2 = std::sqrt(30.0 / kSeeds);
  CHECK(std::abs(count1 / kSeeds - 70.0) < 3.0 * se1);
  CHECK(std::abs(count2 / kSeeds - 30.0) < 3.0 * se2);
}

TEST_CASE("associate: matches the exhaustive pairwise-distance oracle") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const Deployment dep = split_deployment(100.0, 500.0, 0.6, kSquareKm, seed);
    for (const std::vector<int>& coalition : {std::vector<int>{1, 2}, std::vector<int>{1}}) {
      const Association assoc = associate(dep, coalition);
      REQUIRE(assoc.serving_bs.size() == dep.users.size());
      for (std::size_t u = 0; u < dep.users.size(); ++u) {
        CHECK(assoc.serving_bs[u] == oracle_nearest(dep, u, coalition));
      }
    }
  }
}

TEST_CASE("associate: serving_bs and cell_members stay mutually consistent") {
  const Deployment dep = split_deployment(100.0, 500.0, 0.5, kSquareKm, 21);
  const Association assoc = associate(dep, {1, 2});
  std::size_t members = 0;
  for (std::size_t b = 0; b < assoc.cell_members.size(); ++b) {
    for (int u : assoc.cell_members[b]) {
      CHECK(assoc.serving_bs[static_cast<std::size_t>(u)] == static_cast<int>(b));
    }
    members += assoc.cell_members[b].size();
  }
  CHECK(members + static_cast<std::size_t>(assoc.unassociated) == dep.users.size());
}

TEST_CASE("associate: sharing never lengthens any user's serving distance") {
  const Deployment dep = split_deployment(100.0, 500.0, 0.6, kSquareKm, 31);
  const Association none = associate(dep, {1});
  const Association shared = associate(dep, {1, 2});
  for (std::size_t u = 0; u < dep.users.size(); ++u) {
    if (none.serving_bs[u] < 0) continue;
    REQUIRE(shared.serving_bs[u] >= 0);
    const double d_none =
        distance(dep.users[u].pos, dep.base_stations[none.serving_bs[u]].pos);
    const double d_shared =
        distance(dep.users[u].pos, dep.base_stations[shared.serving_bs[u]].pos);
    CHECK(d_shared <= d_none);
  }
}

TEST_CASE("associate: user with no eligible BS is flagged, not fatal") {
  Deployment dep;
  dep.area = kSquareKm;
  dep.base_stations.push_back({{100.0, 100.0}, 2});
  dep.users.push_back({{500.0, 500.0}, 1});
  const Association assoc = associate(dep, {1});  // no sharing
  CHECK(assoc.serving_bs[0] == kUnassociated);
  CHECK(assoc.unassociated == 1);
  const Association shared = associate(dep, {1, 2});
  CHECK(shared.serving_bs[0] == 0);
}

TEST_CASE("associate: empty coalition is rejected") {
  Deployment dep;
  dep.area = kSquareKm;
  CHECK_THROWS_AS(associate(dep, {}), std::invalid_argument);
}

TEST_CASE("angles: normalization lands in (-180, 180]") {
  CHECK(normalize_angle_deg(180.0) == doctest::Approx(180.0));
  CHECK(normalize_angle_deg(-180.0) == doctest::Approx(180.0));
  CHECK(normalize_angle_deg(540.0) == doctest::Approx(180.0));
  CHECK(normalize_angle_deg(-90.0) == doctest::Approx(-90.0));
  CHECK(normalize_angle_deg(720.0 + 30.0) == doctest::Approx(30.0));
}
