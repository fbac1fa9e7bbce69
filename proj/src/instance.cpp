#include "cmab/instance.hpp"

namespace cmab {

OutcomeVector ProblemInstance::sample_outcomes(Rng& rng) const {
  OutcomeVector out;
  sample_outcomes(rng, out);
  return out;
}

void ProblemInstance::sample_outcomes(Rng& rng, OutcomeVector& out) const {
  const OutcomeVector& mu = means();
  out.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out[i] = rng.bernoulli(mu[i]) ? 1.0 : 0.0;
  }
}

double regret_increment(const ProblemInstance& instance, double optimal_value,
                        const SuperArm& selected) {
  return optimal_value - instance.expected_reward(selected, instance.means());
}

}  // namespace cmab
