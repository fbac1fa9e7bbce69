// Environment contract. A ProblemInstance owns the outcome distribution, the
// triggering process and the reward function, and answers analytic queries
// (means, triggering probabilities, expected rewards) used by oracles,
// diagnostics and the regret accounting.
#pragma once

#include <cstddef>
#include <vector>

#include "cmab/core.hpp"
#include "cmab/rng.hpp"

namespace cmab {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// One round of environment response to a selected super arm.
struct TriggerOutcome {
  TriggeredSet triggered;
  Observation feedback;  // entries cover exactly `triggered`, in scan order
  double reward = 0.0;
};

// Instances are immutable after construction; analytic queries may be issued
// concurrently. Sampling draws only from the caller's Rng.
class ProblemInstance {
 public:
  virtual ~ProblemInstance() = default;

  virtual std::size_t num_arms() const = 0;

  // True mean outcome of every base arm.
  virtual const OutcomeVector& means() const = 0;

  // Draws one outcome per arm, mutually independent Bernoulli(mu_i).
  OutcomeVector sample_outcomes(Rng& rng) const;
  void sample_outcomes(Rng& rng, OutcomeVector& out) const;

  // Runs the triggering process for one round given realized outcomes.
  virtual TriggerOutcome trigger(const SuperArm& super_arm,
                                 const OutcomeVector& outcomes,
                                 Rng& rng) const = 0;

  // Arms with positive triggering probability under `super_arm`, sorted.
  virtual std::vector<ArmId> triggering_set(const SuperArm& super_arm) const = 0;

  // Probability that `arm` is observed when `super_arm` is played.
  virtual double triggering_prob(const SuperArm& super_arm, ArmId arm) const = 0;

  // Expected reward of playing `super_arm` if the mean outcomes were `theta`.
  // Evaluated in a canonical arm order so that equal-valued super arms
  // compare bit-for-bit equal.
  virtual double expected_reward(const SuperArm& super_arm,
                                 const OutcomeVector& theta) const = 0;

  // Materializes the feasible set; throws InstanceTooLarge past `cap`.
  virtual std::vector<SuperArm> enumerate_feasible(
      std::size_t cap = kDefaultEnumerationCap) const = 0;

  // Constant B with |r(S,theta) - r(S,theta')| <= B * l1 over the
  // triggering set of S.
  virtual double lipschitz_constant() const = 0;

  // Upper bound on the realized per-round reward.
  virtual double max_reward() const = 0;
};

// Per-round pseudo-regret: the expected-value gap of the selected super arm.
// `optimal_value` is max_S r(S, mu), precomputed by the caller.
double regret_increment(const ProblemInstance& instance, double optimal_value,
                        const SuperArm& selected);

}  // namespace cmab
