#include "mmshare/scheduler.hpp"

#include <stdexcept>
#include <utility>

namespace mmshare {

std::vector<double> compute_weights(std::span<const int> member_nsp, const WeightPolicy& policy) {
  std::vector<double> weights(member_nsp.size());
  if (member_nsp.empty()) return weights;

  if (policy.regime != SharingRegime::WeightedSharing) {
    const double w = 1.0 / static_cast<double>(member_nsp.size());
    for (double& a : weights) a = w;
    return weights;
  }

  std::size_t count[3] = {0, 0, 0};  // index by nsp, {1, 2} used
  for (int nsp : member_nsp) ++count[nsp];

  double sum = 0.0;
  for (std::size_t j = 0; j < member_nsp.size(); ++j) {
    const int nsp = member_nsp[j];
    weights[j] = policy.psi_for(nsp) / static_cast<double>(count[nsp]);
    sum += weights[j];
  }
  // A single-NSP cell leaves sum == psi_i < 1; rescale so no airtime idles.
  if (count[1] == 0 || count[2] == 0) {
    for (double& a : weights) a /= sum;
  }
  return weights;
}

CreditScheduler::CreditScheduler(std::vector<double> weights, double gamma)
    : weights_(std::move(weights)), credits_(weights_.size(), 0.0), gamma_(gamma) {
  if (weights_.empty()) {
    throw std::invalid_argument("scheduler needs a non-empty cell");
  }
}

int CreditScheduler::select(std::span<const double> rates) {
  if (rates.size() != weights_.size()) {
    throw std::invalid_argument("rate vector length does not match cell size");
  }
  int best = 0;
  double best_metric = rates[0] + gamma_ * credits_[0];
  for (std::size_t j = 1; j < rates.size(); ++j) {
    const double metric = rates[j] + gamma_ * credits_[j];
    if (metric > best_metric) {
      best_metric = metric;
      best = static_cast<int>(j);
    }
  }
  for (std::size_t j = 0; j < credits_.size(); ++j) {
    credits_[j] += weights_[j];
  }
  credits_[best] -= 1.0;
  return best;
}

std::vector<double> temporal_shares(std::span<const int> selection_history,
                                    std::size_t num_users) {
  std::vector<double> shares(num_users, 0.0);
  if (selection_history.empty()) return shares;
  for (int j : selection_history) {
    shares[static_cast<std::size_t>(j)] += 1.0;
  }
  const double inv = 1.0 / static_cast<double>(selection_history.size());
  for (double& s : shares) s *= inv;
  return shares;
}

}  // namespace mmshare
