// The two learners under study. Both expose select(rng) -> SuperArm and
// update(feedback, rng); one learner instance per replication, never shared
// across threads.
#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "cmab/core.hpp"
#include "cmab/oracles.hpp"
#include "cmab/rng.hpp"

namespace cmab {

class Learner {
 public:
  virtual ~Learner() = default;
  virtual SuperArm select(Rng& rng) = 0;
  virtual void update(const Observation& feedback, Rng& rng) = 0;
};

// One posterior draw and the resulting oracle choice.
struct RoundSample {
  OutcomeVector theta;
  SuperArm selected;
};

// Thompson sampling with an independent Beta posterior per base arm.
// Posteriors start at Beta(1,1). Each update first rounds the observed
// outcome X to a Bernoulli Y with mean X, then counts Y; for 0/1 click
// feedback the rounding is the identity but is still executed.
class CtsLearner : public Learner {
 public:
  CtsLearner(std::size_t num_arms, Oracle oracle);

  // Draws theta_i ~ Beta(a_i, b_i) in ascending arm order, then asks the
  // oracle. Does not modify learner state.
  RoundSample sample_round(Rng& rng) const;

  SuperArm select(Rng& rng) override { return sample_round(rng).selected; }
  void update(const Observation& feedback, Rng& rng) override;

  // Beta posterior parameters: a_i - 1 successes, b_i - 1 failures.
  const std::vector<std::uint64_t>& beta_a() const { return beta_a_; }
  const std::vector<std::uint64_t>& beta_b() const { return beta_b_; }
  double posterior_mean(ArmId arm) const {
    return static_cast<double>(beta_a_[arm]) /
           static_cast<double>(beta_a_[arm] + beta_b_[arm]);
  }

 private:
  std::vector<std::uint64_t> beta_a_;
  std::vector<std::uint64_t> beta_b_;
  Oracle oracle_;
};

// Combinatorial UCB baseline. Index for an arm observed n_i > 0 times:
//   min(1, mean_i + sqrt(3 ln t / (2 n_i)))
// and 1 for untried arms; the index vector goes through the same exact
// oracle as the posterior samples of Thompson sampling.
class CucbLearner : public Learner {
 public:
  static constexpr double kExplorationNumerator = 3.0;

  CucbLearner(std::size_t num_arms, Oracle oracle);

  OutcomeVector indices() const;

  SuperArm select(Rng& rng) override;
  void update(const Observation& feedback, Rng& rng) override;

  const std::vector<std::uint64_t>& observation_counts() const {
    return counts_;
  }
  const std::vector<double>& empirical_means() const { return means_; }
  std::uint64_t round() const { return round_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<double> means_;
  std::uint64_t round_ = 1;  // the round about to be played
  Oracle oracle_;
};

// name is "cts" or "cucb".
std::unique_ptr<Learner> make_learner(std::string_view name,
                                      std::size_t num_arms, Oracle oracle);

}  // namespace cmab
