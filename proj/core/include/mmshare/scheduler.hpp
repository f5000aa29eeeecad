#pragma once

#include <span>
#include <vector>

#include "mmshare/regime.hpp"

namespace mmshare {

// Per-NSP airtime split under weighted sharing. psi1 is the fraction of a
// shared cell's airtime reserved for NSP 1 subscribers; NSP 2 gets 1 - psi1.
struct WeightPolicy {
  SharingRegime regime = SharingRegime::NoSharing;
  double psi1 = 0.5;

  double psi_for(int nsp) const { return nsp == 1 ? psi1 : 1.0 - psi1; }
};

// Target temporal shares for the members of one cell.
//
// No sharing / equal sharing: uniform 1/N over the cell.
// Weighted sharing: a_j = psi_i / N_i with N_i the per-cell subscriber count
// of NSP i. If one NSP has no subscribers in the cell the raw weights sum to
// psi_other < 1; they are renormalized so the cell never idles airtime.
std::vector<double> compute_weights(std::span<const int> member_nsp, const WeightPolicy& policy);

// Credit-based temporal-fair opportunistic scheduler for one cell.
//
// Each slot the scheduler picks j* = argmax_j (R_j + gamma * b_j) and updates
// credits b_j += a_j - [j == j*]. Unselected users accumulate credit toward
// their target share a_j, selected users pay one slot; with sum(a_j) = 1 the
// credit total is conserved at zero. gamma = 0 is purely opportunistic;
// gamma -> infinity degenerates to round robin.
class CreditScheduler {
 public:
  CreditScheduler(std::vector<double> weights, double gamma);

  // Picks the user for this slot from per-user rates and updates credits.
  // Ties break toward the lowest index. Throws std::invalid_argument if the
  // rate vector length does not match the cell size.
  int select(std::span<const double> rates);

  std::span<const double> credits() const { return credits_; }
  std::span<const double> weights() const { return weights_; }
  double gamma() const { return gamma_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
  std::vector<double> credits_;
  double gamma_ = 0.0;
};

// Empirical airtime fraction per user from a selection history.
std::vector<double> temporal_shares(std::span<const int> selection_history, std::size_t num_users);

}  // namespace mmshare
