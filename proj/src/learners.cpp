#include "cmab/learners.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cmab {

CtsLearner::CtsLearner(std::size_t num_arms, Oracle oracle)
    : beta_a_(num_arms, 1), beta_b_(num_arms, 1), oracle_(std::move(oracle)) {}

RoundSample CtsLearner::sample_round(Rng& rng) const {
  RoundSample round;
  round.theta.resize(beta_a_.size());
  for (std::size_t i = 0; i < beta_a_.size(); ++i) {
    round.theta[i] = rng.beta(static_cast<double>(beta_a_[i]),
                              static_cast<double>(beta_b_[i]));
  }
  round.selected = oracle_(round.theta).super_arm;
  return round;
}

void CtsLearner::update(const Observation& feedback, Rng& rng) {
  for (const auto& [arm, outcome] : feedback.entries) {
    if (arm >= beta_a_.size()) {
      throw InvalidArm("cts update: arm id " + std::to_string(arm) +
                       " out of range");
    }
    if (rng.bernoulli(outcome)) {
      ++beta_a_[arm];
    } else {
      ++beta_b_[arm];
    }
  }
}

CucbLearner::CucbLearner(std::size_t num_arms, Oracle oracle)
    : counts_(num_arms, 0), means_(num_arms, 0.0), oracle_(std::move(oracle)) {}

OutcomeVector CucbLearner::indices() const {
  OutcomeVector index(counts_.size());
  const double log_t = std::log(static_cast<double>(round_));
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) {
      index[i] = 1.0;
    } else {
      const double radius = std::sqrt(kExplorationNumerator * log_t /
                                      (2.0 * static_cast<double>(counts_[i])));
      index[i] = std::min(1.0, means_[i] + radius);
    }
  }
  return index;
}

SuperArm CucbLearner::select(Rng& /*rng*/) {
  return oracle_(indices()).super_arm;
}

void CucbLearner::update(const Observation& feedback, Rng& /*rng*/) {
  for (const auto& [arm, outcome] : feedback.entries) {
    if (arm >= counts_.size()) {
      throw InvalidArm("cucb update: arm id " + std::to_string(arm) +
                       " out of range");
    }
    ++counts_[arm];
    means_[arm] += (outcome - means_[arm]) / static_cast<double>(counts_[arm]);
  }
  ++round_;
}

std::unique_ptr<Learner> make_learner(std::string_view name,
                                      std::size_t num_arms, Oracle oracle) {
  if (name == "cts") {
    return std::make_unique<CtsLearner>(num_arms, std::move(oracle));
  }
  if (name == "cucb") {
    return std::make_unique<CucbLearner>(num_arms, std::move(oracle));
  }
  throw InvalidParameter("unknown learner \"" + std::string(name) +
                         "\" (expected \"cts\" or \"cucb\")");
}

}  // namespace cmab
