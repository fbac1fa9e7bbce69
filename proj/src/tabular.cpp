#include "cmab/tabular.hpp"

#include <algorithm>
#include <string>

namespace cmab {

TabularInstance::TabularInstance(Config config) : config_(std::move(config)) {
  validate();
  double wmax = 0.0, wsum = 0.0;
  for (double w : config_.reward_weights) {
    wmax = std::max(wmax, w);
    wsum += w;
  }
  lipschitz_ = wmax;
  max_reward_ = wsum;
}

TabularInstance::TabularInstance(Config config, ExpectedRewardFn expected,
                                 RealizedRewardFn realized, double lipschitz,
                                 double max_reward)
    : config_(std::move(config)),
      expected_fn_(std::move(expected)),
      realized_fn_(std::move(realized)),
      lipschitz_(lipschitz),
      max_reward_(max_reward) {
  validate();
}

void TabularInstance::validate() {
  const std::size_t m = config_.num_arms;
  if (m == 0) throw InvalidParameter("tabular: need at least one arm");
  if (config_.means.size() != m) {
    throw InvalidParameter("tabular: means must have length m");
  }
  for (double mu : config_.means) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw InvalidParameter("tabular: means must lie in [0, 1]");
    }
  }
  if (config_.feasible.empty()) {
    throw InvalidParameter("tabular: feasible set must be nonempty");
  }
  if (config_.trigger_probs.size() != config_.feasible.size()) {
    throw InvalidParameter(
        "tabular: need one trigger-probability row per feasible super arm");
  }
  if (!expected_fn_ && config_.reward_weights.size() != m) {
    throw InvalidParameter("tabular: reward weights must have length m");
  }
  for (std::size_t s = 0; s < config_.feasible.size(); ++s) {
    SuperArm& sa = config_.feasible[s];
    std::sort(sa.arms.begin(), sa.arms.end());
    if (std::adjacent_find(sa.arms.begin(), sa.arms.end()) != sa.arms.end()) {
      throw InvalidSuperArm("tabular: duplicate arm in feasible super arm " +
                            std::to_string(s));
    }
    for (ArmId arm : sa.arms) {
      if (arm >= m) {
        throw InvalidArm("tabular: arm id " + std::to_string(arm) +
                         " out of range");
      }
    }
    const auto& row = config_.trigger_probs[s];
    if (row.size() != m) {
      throw InvalidParameter("tabular: trigger-probability rows need length m");
    }
    for (double p : row) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidParameter(
            "tabular: triggering probabilities must lie in [0, 1]");
      }
    }
    for (ArmId arm : sa.arms) {
      if (row[arm] != 1.0) {
        throw InvalidParameter(
            "tabular: selected arms must trigger with probability 1 (super "
            "arm " +
            std::to_string(s) + ", arm " + std::to_string(arm) + ")");
      }
    }
    if (!feasible_index_.emplace(sa.arms, s).second) {
      throw InvalidParameter("tabular: duplicate feasible super arm");
    }
  }
}

std::size_t TabularInstance::index_of(const SuperArm& super_arm) const {
  std::vector<ArmId> key = super_arm.arms;
  std::sort(key.begin(), key.end());
  auto it = feasible_index_.find(key);
  if (it == feasible_index_.end()) {
    throw InfeasibleSuperArm("tabular: super arm is not in the feasible set");
  }
  return it->second;
}

TriggerOutcome TabularInstance::trigger(const SuperArm& super_arm,
                                        const OutcomeVector& outcomes,
                                        Rng& rng) const {
  const auto& probs = config_.trigger_probs[index_of(super_arm)];
  TriggerOutcome out;
  for (ArmId i = 0; i < config_.num_arms; ++i) {
    const double p = probs[i];
    if (p <= 0.0) continue;
    if (p >= 1.0 || rng.bernoulli(p)) {
      out.triggered.arms.push_back(i);
      out.feedback.entries.emplace_back(i, outcomes[i]);
    }
  }
  if (realized_fn_) {
    out.reward = realized_fn_(out.triggered, outcomes);
  } else {
    for (const auto& [arm, x] : out.feedback.entries) {
      out.reward += config_.reward_weights[arm] * x;
    }
  }
  return out;
}

std::vector<ArmId> TabularInstance::triggering_set(
    const SuperArm& super_arm) const {
  const auto& probs = config_.trigger_probs[index_of(super_arm)];
  std::vector<ArmId> set;
  for (ArmId i = 0; i < config_.num_arms; ++i) {
    if (probs[i] > 0.0) set.push_back(i);
  }
  return set;
}

double TabularInstance::triggering_prob(const SuperArm& super_arm,
                                        ArmId arm) const {
  if (arm >= config_.num_arms) {
    throw InvalidArm("triggering_prob: arm id " + std::to_string(arm) +
                     " out of range");
  }
  return config_.trigger_probs[index_of(super_arm)][arm];
}

double TabularInstance::expected_reward(const SuperArm& super_arm,
                                        const OutcomeVector& theta) const {
  if (theta.size() != config_.num_arms) {
    throw InvalidParameter("expected_reward: theta must have length m");
  }
  if (expected_fn_) return expected_fn_(super_arm, theta);
  const auto& probs = config_.trigger_probs[index_of(super_arm)];
  double total = 0.0;
  for (ArmId i = 0; i < config_.num_arms; ++i) {
    total += probs[i] * config_.reward_weights[i] * theta[i];
  }
  return total;
}

std::vector<SuperArm> TabularInstance::enumerate_feasible(
    std::size_t cap) const {
  if (config_.feasible.size() > cap) {
    throw InstanceTooLarge(
        "tabular: feasible set exceeds the enumeration cap of " +
        std::to_string(cap));
  }
  return config_.feasible;
}

}  // namespace cmab
