#pragma once

#include <cstdint>
#include <vector>

namespace mmshare {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

// Angle of the ray a -> b in degrees, in (-180, 180].
double bearing_deg(const Point& a, const Point& b);

// Normalizes any angle in degrees to (-180, 180].
double normalize_angle_deg(double deg);

struct Rect {
  double width_m = 0.0;
  double height_m = 0.0;
  double area_km2() const { return width_m * height_m * 1e-6; }
};

struct Site {
  Point pos;
  int nsp = 0;  // owning network service provider, 1 or 2
};

struct Deployment {
  Rect area;
  std::vector<Site> base_stations;
  std::vector<Site> users;
};

inline constexpr int kUnassociated = -1;

struct Association {
  std::vector<int> serving_bs;                 // user index -> BS index or kUnassociated
  std::vector<std::vector<int>> cell_members;  // BS index -> user indices
  int unassociated = 0;
};

// Homogeneous Poisson point process over a rectangle: the number of points is
// Poisson(intensity * area) and positions are i.i.d. uniform. Deterministic
// given the seed.
std::vector<Point> sample_hppp(double intensity_per_km2, const Rect& area, std::uint64_t seed);

// Splits total BS/user densities between two NSPs: NSP 1 receives fraction n1
// of both densities, NSP 2 the rest, each as an independent hPPP.
Deployment split_deployment(double total_bs_density_per_km2, double total_user_density_per_km2,
                            double n1, const Rect& area, std::uint64_t seed);

// Nearest-BS association. A user whose NSP belongs to the coalition may attach
// to any coalition member's BS; otherwise only to its own NSP's BSs. Distance
// ties break toward the lowest BS index. Users with an empty eligible set are
// marked unassociated.
Association associate(const Deployment& dep, const std::vector<int>& coalition);

}  // namespace mmshare
