// Fully tabular environment: an explicit feasible set, a per-super-arm table
// of triggering probabilities, and a linear realized reward
// sum_{i in S'} w_i * X_i. Arms outside the selected super arm trigger
// conditionally independently given S, which is one admissible joint law for
// the stated marginal probabilities. Mainly a fixture for brute-force
// oracles and audits.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "cmab/instance.hpp"

namespace cmab {

class TabularInstance : public ProblemInstance {
 public:
  struct Config {
    std::size_t num_arms = 0;
    OutcomeVector means;
    std::vector<SuperArm> feasible;  // stored sorted ascending per super arm
    // trigger_probs[s][i] = probability arm i is observed when feasible[s]
    // is played; must be 1 for every i in feasible[s].
    std::vector<std::vector<double>> trigger_probs;
    std::vector<double> reward_weights;
  };

  // Custom reward hook: analytic expectation and matching realized reward.
  using ExpectedRewardFn =
      std::function<double(const SuperArm&, const OutcomeVector&)>;
  using RealizedRewardFn =
      std::function<double(const TriggeredSet&, const OutcomeVector&)>;

  explicit TabularInstance(Config config);
  TabularInstance(Config config, ExpectedRewardFn expected,
                  RealizedRewardFn realized, double lipschitz,
                  double max_reward);

  std::size_t num_arms() const override { return config_.num_arms; }
  const OutcomeVector& means() const override { return config_.means; }
  TriggerOutcome trigger(const SuperArm& super_arm,
                         const OutcomeVector& outcomes,
                         Rng& rng) const override;
  std::vector<ArmId> triggering_set(const SuperArm& super_arm) const override;
  double triggering_prob(const SuperArm& super_arm, ArmId arm) const override;
  double expected_reward(const SuperArm& super_arm,
                         const OutcomeVector& theta) const override;
  std::vector<SuperArm> enumerate_feasible(
      std::size_t cap = kDefaultEnumerationCap) const override;
  double lipschitz_constant() const override { return lipschitz_; }
  double max_reward() const override { return max_reward_; }

 private:
  std::size_t index_of(const SuperArm& super_arm) const;
  void validate();

  Config config_;
  std::map<std::vector<ArmId>, std::size_t> feasible_index_;
  ExpectedRewardFn expected_fn_;  // empty: linear rule
  RealizedRewardFn realized_fn_;
  double lipschitz_ = 1.0;
  double max_reward_ = 0.0;
};

}  // namespace cmab
