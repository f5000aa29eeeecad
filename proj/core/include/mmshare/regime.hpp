#pragma once

#include <stdexcept>
#include <string>

namespace mmshare {

// The three base-station sharing regimes. Used by the scheduler (weight
// assignment), the simulation engine (association rule) and the pricing
// game (consumer surplus model).
enum class SharingRegime { NoSharing, EqualSharing, WeightedSharing };

inline const char* to_string(SharingRegime r) {
  switch (r) {
    case SharingRegime::NoSharing: return "none";
    case SharingRegime::EqualSharing: return "equal";
    case SharingRegime::WeightedSharing: return "weighted";
  }
  return "?";
}

inline SharingRegime regime_from_string(const std::string& s) {
  if (s == "none") return SharingRegime::NoSharing;
  if (s == "equal") return SharingRegime::EqualSharing;
  if (s == "weighted") return SharingRegime::WeightedSharing;
  throw std::invalid_argument("unknown sharing regime '" + s +
                              "' (expected none, equal or weighted)");
}

}  // namespace mmshare
