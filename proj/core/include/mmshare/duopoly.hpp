#pragma once

#include <utility>
#include <vector>

#include "mmshare/regime.hpp"

namespace mmshare {

// Sequential-pricing duopoly: NSP 1 (the larger network) posts its price
// first, NSP 2 responds, then a unit mass of consumers with taste omega
// uniform on [0, omega_hat] each subscribe to one NSP or to neither.
// A consumer of taste omega values NSP i's service at
//   no sharing:        omega * mu * n_i
//   equal sharing:     omega * mu * (n1 + n2)
//   weighted sharing:  omega * mu * psi_i * (n1 + n2)
// and pays p_i.
struct MarketParams {
  double n1 = 0.6;  // BS share of NSP 1; requires n2 < n1, n1 + n2 <= 1
  double n2 = 0.4;
  double c1 = 0.0;  // marginal cost per subscriber
  double c2 = 0.0;
  double mu = 1.0;        // utility per taste unit per BS share
  double omega_hat = 1.0; // taste upper bound
  double psi1 = 0.63;     // scheduler weight of NSP 1 (weighted sharing only)
  double consumer_mass = 1.0;
  double undercut_epsilon = 1e-6;  // price shading used in Bertrand undercutting

  void validate() const;  // throws std::invalid_argument naming the field
};

struct MarginalConsumers {
  double lower_raw = 0.0;  // indifferent between NSP 2 and nothing
  double upper_raw = 0.0;  // indifferent between NSP 1 and NSP 2
  double lower = 0.0;      // clamped to [0, omega_hat]
  double upper = 0.0;
};

// Closed-form indifference points for the given prices. Throws for the
// degenerate markets where the dividing consumer is undefined (equal sharing,
// n1 == n2 under no sharing, psi1 == psi2 under weighted sharing).
MarginalConsumers marginal_consumers(const MarketParams& params, double p1, double p2,
                                     SharingRegime regime);

struct Demand {
  double subscribers1 = 0.0;
  double subscribers2 = 0.0;
};

// Subscriber counts at the given prices. For no/weighted sharing this is the
// clamped marginal-consumer split; for equal sharing consumers compare prices
// only and the cheaper NSP captures everyone above its participation
// threshold (price ties split the served segment evenly).
Demand demand_at(const MarketParams& params, double p1, double p2, SharingRegime regime);

// pi_i = (p_i - c_i) * N_i.
std::pair<double, double> profits(const MarketParams& params, double p1, double p2,
                                  SharingRegime regime);

struct PriceSolution {
  double p1 = 0.0;
  double p2 = 0.0;
  // True when the closed form's interior assumption
  // 0 <= omega_lower <= omega_upper <= omega_hat fails at these prices.
  bool corner = false;
};

// Stackelberg solution by backward induction (closed forms). Equal sharing
// collapses to Bertrand competition: (c, c) for symmetric costs; with
// asymmetric costs the cheaper NSP prices at min(rival cost - epsilon,
// its monopoly price) and serves the whole market, and the losing side is
// reported at its own marginal cost.
PriceSolution best_response_prices(const MarketParams& params, SharingRegime regime);

// Brute-force oracle: exhaustive backward induction on a uniform price grid
// of the given step. For each leader price the follower's grid best response
// is computed (ties toward the lower price); the leader then maximizes its
// profit against that reply. The consumer stage is evaluated exactly.
std::pair<double, double> numeric_equilibrium(const MarketParams& params, SharingRegime regime,
                                              double resolution);

// Equilibrium profits with c1 = c2 = 0, direct closed forms:
//   no sharing:   pi1 = mu*omega_hat*n1*(n1-n2) / (2*(2n1-n2))
//                 pi2 = mu*omega_hat*n1*n2*(n1-n2) / (4*(2n1-n2)^2)
//   weighted:     pi1 = mu*omega_hat*psi1*(psi1-psi2)*(n1+n2) / (2*(2psi1-psi2))
//                 pi2 = mu*omega_hat*psi1*psi2*(psi1-psi2)*(n1+n2) / (4*(2psi1-psi2)^2)
std::pair<double, double> zero_cost_profits(double n1, double n2, double psi1,
                                            double mu_omega_hat, SharingRegime regime);

// Open interval of psi1 on which weighted sharing beats no sharing for both
// NSPs at zero marginal cost:
//   psi_min = n1 / (n1 + n2)
//   psi_max = (4 n1^2 - 5 n1 n2 + 3 n2^2 + sqrt(delta)) / (4 (2 n1 - n2)^2)
//   delta   = 16 n1^4 - 8 n1^3 n2 - 15 n1^2 n2^2 + 10 n1 n2^3 + n2^4
// psi_max is capped at 1 (psi_max_raw keeps the uncapped value). beneficial
// is false when the interval is empty or delta < 0.
struct PsiInterval {
  bool beneficial = false;
  double psi_min = 0.0;
  double psi_max = 0.0;
  double psi_max_raw = 0.0;
  bool has_real_bound = true;  // false iff delta < 0
};

PsiInterval psi_bounds(double n1, double n2);

struct RegionCell {
  double n1 = 0.0;
  double n2 = 0.0;
  PsiInterval interval;
};

// Evaluates psi_bounds over the grid {(n1, n2): n2 < n1, n1 + n2 <= 1} with
// the given step.
std::vector<RegionCell> mutual_benefit_region(double resolution);

// Full solved market for reporting: closed-form prices plus everything
// downstream of them.
struct MarketOutcome {
  SharingRegime regime = SharingRegime::NoSharing;
  double p1 = 0.0;
  double p2 = 0.0;
  MarginalConsumers marginal;
  double share1 = 0.0;  // fraction of the consumer mass
  double share2 = 0.0;
  double subscribers1 = 0.0;
  double subscribers2 = 0.0;
  double profit1 = 0.0;
  double profit2 = 0.0;
  bool corner = false;
};

MarketOutcome solve_market(const MarketParams& params, SharingRegime regime);

}  // namespace mmshare
