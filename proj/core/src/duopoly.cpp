#include "mmshare/duopoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mmshare {

namespace {

// Quality seen by a subscriber of NSP i: the slope of its surplus in omega.
double quality(const MarketParams& m, int nsp, SharingRegime regime) {
  switch (regime) {
    case SharingRegime::NoSharing:
      return m.mu * (nsp == 1 ? m.n1 : m.n2);
    case SharingRegime::EqualSharing:
      return m.mu * (m.n1 + m.n2);
    case SharingRegime::WeightedSharing:
      return m.mu * (nsp == 1 ? m.psi1 : 1.0 - m.psi1) * (m.n1 + m.n2);
  }
  return 0.0;
}

double clamp01(double v, double hi) { return std::min(std::max(v, 0.0), hi); }

// Participation threshold: lowest taste willing to buy quality q at price p.
double participation(double p, double q, double omega_hat) {
  if (q <= 0.0) return omega_hat;  // nobody buys a worthless service at p > 0
  return clamp01(p / q, omega_hat);
}

}  // namespace

void MarketParams::validate() const {
  if (!(n2 > 0.0)) throw std::invalid_argument("market.n2 must be positive");
  if (!(n1 > n2)) throw std::invalid_argument("market.n1 must exceed n2");
  if (n1 + n2 > 1.0 + 1e-12) throw std::invalid_argument("market.n1 + n2 must not exceed 1");
  if (!(omega_hat > 0.0)) throw std::invalid_argument("market.omega_hat must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("market.mu must be positive");
  if (psi1 < 0.0 || psi1 > 1.0) throw std::invalid_argument("market.psi1 must lie in [0, 1]");
  if (c1 < 0.0) throw std::invalid_argument("market.c1 must be nonnegative");
  if (c2 < 0.0) throw std::invalid_argument("market.c2 must be nonnegative");
  if (!(consumer_mass > 0.0)) throw std::invalid_argument("market.consumer_mass must be positive");
  if (!(undercut_epsilon > 0.0)) {
    throw std::invalid_argument("market.undercut_epsilon must be positive");
  }
}

MarginalConsumers marginal_consumers(const MarketParams& m, double p1, double p2,
                                     SharingRegime regime) {
  MarginalConsumers out;
  switch (regime) {
    case SharingRegime::NoSharing: {
      if (m.n1 == m.n2) {
        throw std::invalid_argument(
            "degenerate market: n1 == n2 under no sharing (pure price competition)");
      }
      out.lower_raw = p2 / (m.mu * m.n2);
      out.upper_raw = (p1 - p2) / (m.mu * (m.n1 - m.n2));
      break;
    }
    case SharingRegime::WeightedSharing: {
      const double psi2 = 1.0 - m.psi1;
      if (m.psi1 == psi2) {
        throw std::invalid_argument(
            "degenerate market: psi1 == psi2 under weighted sharing (pure price competition)");
      }
      const double pool = m.n1 + m.n2;
      out.lower_raw = p2 / (m.mu * psi2 * pool);
      out.upper_raw = (p1 - p2) / (m.mu * pool * (m.psi1 - psi2));
      break;
    }
    case SharingRegime::EqualSharing:
      throw std::invalid_argument(
          "degenerate market: equal sharing offers identical qualities (pure price competition)");
  }
  out.lower = clamp01(out.lower_raw, m.omega_hat);
  out.upper = clamp01(out.upper_raw, m.omega_hat);
  return out;
}

Demand demand_at(const MarketParams& m, double p1, double p2, SharingRegime regime) {
  Demand d;
  if (regime == SharingRegime::EqualSharing) {
    // Identical qualities: the cheaper NSP takes everyone above its
    // participation threshold; a price tie splits the served segment.
    const double q = quality(m, 1, regime);
    if (p1 < p2) {
      d.subscribers1 = m.consumer_mass * (m.omega_hat - participation(p1, q, m.omega_hat)) /
                       m.omega_hat;
    } else if (p2 < p1) {
      d.subscribers2 = m.consumer_mass * (m.omega_hat - participation(p2, q, m.omega_hat)) /
                       m.omega_hat;
    } else {
      const double served =
          m.consumer_mass * (m.omega_hat - participation(p1, q, m.omega_hat)) / m.omega_hat;
      d.subscribers1 = d.subscribers2 = 0.5 * served;
    }
    return d;
  }
  const MarginalConsumers mc = marginal_consumers(m, p1, p2, regime);
  d.subscribers1 = m.consumer_mass * (m.omega_hat - mc.upper) / m.omega_hat;
  d.subscribers2 = m.consumer_mass * std::max(mc.upper - mc.lower, 0.0) / m.omega_hat;
  return d;
}

std::pair<double, double> profits(const MarketParams& m, double p1, double p2,
                                  SharingRegime regime) {
  const Demand d = demand_at(m, p1, p2, regime);
  return {(p1 - m.c1) * d.subscribers1, (p2 - m.c2) * d.subscribers2};
}

PriceSolution best_response_prices(const MarketParams& m, SharingRegime regime) {
  PriceSolution sol;
  switch (regime) {
    case SharingRegime::NoSharing: {
      if (m.n1 == m.n2) {
        throw std::invalid_argument(
            "degenerate market: n1 == n2 under no sharing (pure price competition)");
      }
      const double muw = m.mu * m.omega_hat;
      const double d = 2.0 * m.n1 - m.n2;
      sol.p1 = ((2.0 * m.c1 + m.c2) * m.n1 - m.c1 * m.n2 + 2.0 * muw * m.n1 * (m.n1 - m.n2)) /
               (2.0 * d);
      sol.p2 = (4.0 * m.c2 * m.n1 * m.n1 +
                (2.0 * m.c1 - m.c2 + 2.0 * muw * (m.n1 - m.n2)) * m.n1 * m.n2 -
                m.c1 * m.n2 * m.n2) /
               (4.0 * m.n1 * d);
      break;
    }
    case SharingRegime::WeightedSharing: {
      const double psi1 = m.psi1;
      const double psi2 = 1.0 - psi1;
      if (psi1 == psi2) {
        throw std::invalid_argument(
            "degenerate market: psi1 == psi2 under weighted sharing (pure price competition)");
      }
      if (psi1 < psi2) {
        throw std::invalid_argument(
            "weighted sharing requires psi1 >= psi2 for the larger NSP to keep positive share");
      }
      const double muw = m.mu * m.omega_hat;
      const double pool = m.n1 + m.n2;
      const double d = 2.0 * psi1 - psi2;
      sol.p1 = (2.0 * muw * psi1 * (psi1 - psi2) * pool + (2.0 * m.c1 + m.c2) * psi1 -
                m.c1 * psi2) /
               (2.0 * d);
      sol.p2 = (psi1 * psi2 * (2.0 * muw * pool * (psi1 - psi2) + 2.0 * m.c1 - m.c2) +
                4.0 * m.c2 * psi1 * psi1 - m.c1 * psi2 * psi2) /
               (4.0 * psi1 * d);
      break;
    }
    case SharingRegime::EqualSharing: {
      // Bertrand competition on identical goods.
      if (m.c1 == m.c2) {
        sol.p1 = m.c1;
        sol.p2 = m.c2;
        return sol;  // interior by convention: zero profit, split market
      }
      const double pool_q = m.mu * (m.n1 + m.n2);
      const bool nsp1_wins = m.c1 < m.c2;
      const double c_win = nsp1_wins ? m.c1 : m.c2;
      const double c_lose = nsp1_wins ? m.c2 : m.c1;
      // Undercut the rival's cost unless the unconstrained monopoly price is
      // lower; the loser is reported at its own cost (any such price yields
      // zero share and zero profit).
      const double monopoly = 0.5 * (c_win + pool_q * m.omega_hat);
      const double p_win = std::min(c_lose - m.undercut_epsilon, monopoly);
      sol.p1 = nsp1_wins ? p_win : c_lose;
      sol.p2 = nsp1_wins ? c_lose : p_win;
      return sol;
    }
  }
  const MarginalConsumers mc = marginal_consumers(m, sol.p1, sol.p2, regime);
  const double tol = 1e-9 * m.omega_hat;
  sol.corner = !(mc.lower_raw >= -tol && mc.upper_raw >= mc.lower_raw - tol &&
                 mc.upper_raw <= m.omega_hat + tol);
  return sol;
}

std::pair<double, double> numeric_equilibrium(const MarketParams& m, SharingRegime regime,
                                              double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");

  const double top_quality =
      regime == SharingRegime::NoSharing ? m.mu * m.n1 : quality(m, 1, regime);
  const double p_max = top_quality * m.omega_hat + std::max(m.c1, m.c2);
  const long grid_n = std::lround(std::ceil(p_max / resolution));

  auto follower_profit = [&](double p1, double p2) {
    const Demand d = demand_at(m, p1, p2, regime);
    return (p2 - m.c2) * d.subscribers2;
  };

  // Follower stage for leader grid index k1. Any p2 > p1 leaves NSP 2 with
  // zero share in every regime, so it suffices to scan [0, p1] plus the
  // zero-profit fallback p1 + step. Scanning downward with >= lands on the
  // lowest price among profit maximizers, matching a full-range scan exactly
  // (the tie rule matters: zero-profit plateaus are common and the follower's
  // price still moves the leader's demand).
  //
  // When the grid maximum is a strict interior peak, the profit is exactly
  // quadratic in p2 on the active demand piece, so the vertex of the parabola
  // through the three surrounding points recovers the continuum reply. That
  // kills the reply-quantization sawtooth that would otherwise wander the
  // leader's argmax by tens of grid steps.
  auto follower_best = [&](long k1) {
    const double p1 = static_cast<double>(k1) * resolution;
    double best_p2 = p1 + resolution;
    double best_profit = 0.0;
    long best_k = -1;
    for (long k = std::min(k1, grid_n); k >= 0; --k) {
      const double p2 = static_cast<double>(k) * resolution;
      const double profit = follower_profit(p1, p2);
      if (profit >= best_profit) {
        best_profit = profit;
        best_p2 = p2;
        best_k = k;
      }
    }
    if (best_k >= 1 && best_k < k1) {
      const double y0 = follower_profit(p1, static_cast<double>(best_k - 1) * resolution);
      const double y1 = best_profit;
      const double y2 = follower_profit(p1, static_cast<double>(best_k + 1) * resolution);
      const double curvature = y0 - 2.0 * y1 + y2;
      if (y0 < y1 && y2 < y1 && curvature < 0.0) {
        const double offset = 0.5 * resolution * (y0 - y2) / curvature;
        const double refined = best_p2 + offset;
        if (refined > best_p2 - resolution && refined < best_p2 + resolution &&
            follower_profit(p1, refined) >= y1) {
          best_p2 = refined;
        }
      }
    }
    return best_p2;
  };

  double best_p1 = 0.0;
  double best_p2 = resolution;
  double best_profit1 = -1e300;
  for (long k = 0; k <= grid_n; ++k) {
    const double p1 = static_cast<double>(k) * resolution;
    const double p2 = follower_best(k);
    const Demand d = demand_at(m, p1, p2, regime);
    const double profit1 = (p1 - m.c1) * d.subscribers1;
    if (profit1 > best_profit1) {  // strict: ties keep the lowest leader price
      best_profit1 = profit1;
      best_p1 = p1;
      best_p2 = p2;
    }
  }
  return {best_p1, best_p2};
}

std::pair<double, double> zero_cost_profits(double n1, double n2, double psi1,
                                            double mu_omega_hat, SharingRegime regime) {
  switch (regime) {
    case SharingRegime::NoSharing: {
      if (n1 == n2) {
        throw std::invalid_argument(
            "degenerate market: n1 == n2 under no sharing has zero price power");
      }
      const double d = 2.0 * n1 - n2;
      const double pi1 = mu_omega_hat * n1 * (n1 - n2) / (2.0 * d);
      const double pi2 = mu_omega_hat * n1 * n2 * (n1 - n2) / (4.0 * d * d);
      return {pi1, pi2};
    }
    case SharingRegime::WeightedSharing: {
      const double psi2 = 1.0 - psi1;
      if (psi1 == psi2) {
        throw std::invalid_argument(
            "degenerate market: psi1 == psi2 under weighted sharing has zero price power");
      }
      const double pool = n1 + n2;
      const double d = 2.0 * psi1 - psi2;
      const double pi1 = mu_omega_hat * psi1 * (psi1 - psi2) * pool / (2.0 * d);
      const double pi2 = mu_omega_hat * psi1 * psi2 * (psi1 - psi2) * pool / (4.0 * d * d);
      return {pi1, pi2};
    }
    case SharingRegime::EqualSharing:
      break;
  }
  throw std::invalid_argument("zero-cost profits are defined for no sharing and weighted sharing");
}

PsiInterval psi_bounds(double n1, double n2) {
  if (!(n2 > 0.0) || n2 > n1 || n1 + n2 > 1.0 + 1e-12) {
    throw std::invalid_argument("psi_bounds requires 0 < n2 <= n1 and n1 + n2 <= 1");
  }
  PsiInterval out;
  out.psi_min = n1 / (n1 + n2);
  const double delta = 16.0 * n1 * n1 * n1 * n1 - 8.0 * n1 * n1 * n1 * n2 -
                       15.0 * n1 * n1 * n2 * n2 + 10.0 * n1 * n2 * n2 * n2 + n2 * n2 * n2 * n2;
  if (delta < 0.0) {
    out.has_real_bound = false;
    out.beneficial = false;
    return out;
  }
  const double denom = 2.0 * n1 - n2;
  out.psi_max_raw = (4.0 * n1 * n1 - 5.0 * n1 * n2 + 3.0 * n2 * n2 + std::sqrt(delta)) /
                    (4.0 * denom * denom);
  out.psi_max = std::min(out.psi_max_raw, 1.0);
  out.beneficial = out.psi_min < out.psi_max;
  return out;
}

std::vector<RegionCell> mutual_benefit_region(double resolution) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  std::vector<RegionCell> cells;
  const long steps = std::lround(std::floor(1.0 / resolution));
  for (long i = 1; i <= steps; ++i) {
    const double n1 = static_cast<double>(i) * resolution;
    for (long j = 1; j < i; ++j) {
      const double n2 = static_cast<double>(j) * resolution;
      if (n1 + n2 > 1.0 + 1e-12) break;
      cells.push_back({n1, n2, psi_bounds(n1, n2)});
    }
  }
  return cells;
}

MarketOutcome solve_market(const MarketParams& m, SharingRegime regime) {
  m.validate();
  MarketOutcome out;
  out.regime = regime;
  const PriceSolution prices = best_response_prices(m, regime);
  out.p1 = prices.p1;
  out.p2 = prices.p2;
  out.corner = prices.corner;
  if (regime == SharingRegime::EqualSharing) {
    const double q = m.mu * (m.n1 + m.n2);
    const double winner_price = std::min(out.p1, out.p2);
    const double threshold = participation(winner_price, q, m.omega_hat);
    out.marginal.lower_raw = out.marginal.lower = threshold;
    out.marginal.upper_raw = out.marginal.upper = threshold;
  } else {
    out.marginal = marginal_consumers(m, out.p1, out.p2, regime);
  }
  const Demand d = demand_at(m, out.p1, out.p2, regime);
  out.subscribers1 = d.subscribers1;
  out.subscribers2 = d.subscribers2;
  out.share1 = d.subscribers1 / m.consumer_mass;
  out.share2 = d.subscribers2 / m.consumer_mass;
  const auto [pi1, pi2] = profits(m, out.p1, out.p2, regime);
  out.profit1 = pi1;
  out.profit2 = pi2;
  return out;
}

}  // namespace mmshare
