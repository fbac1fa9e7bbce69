#include "cmab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cmab {

namespace {

std::string describe(const SuperArm& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.arms.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.arms[i]);
  }
  return out + ")";
}

}  // namespace

AuditReport validate_instance(const ProblemInstance& instance,
                              std::size_t samples, Rng& rng,
                              std::size_t enumeration_cap) {
  if (samples == 0) throw InvalidParameter("audit: samples must be >= 1");
  AuditReport report;
  const double n = static_cast<double>(samples);
  const double reward_tol = 4.0 * (instance.max_reward() / 2.0) / std::sqrt(n);

  for (const SuperArm& s : instance.enumerate_feasible(enumeration_cap)) {
    ++report.super_arms_checked;
    const std::vector<ArmId> tset = instance.triggering_set(s);
    std::vector<std::size_t> hits(instance.num_arms(), 0);
    double reward_sum = 0.0;
    bool stray_arm = false;
    OutcomeVector outcomes;
    for (std::size_t round = 0; round < samples; ++round) {
      instance.sample_outcomes(rng, outcomes);
      const TriggerOutcome result = instance.trigger(s, outcomes, rng);
      reward_sum += result.reward;
      for (ArmId arm : result.triggered.arms) {
        ++hits[arm];
        if (!std::binary_search(tset.begin(), tset.end(), arm)) {
          stray_arm = true;
        }
      }
    }
    if (stray_arm) {
      report.violations.push_back("super arm " + describe(s) +
                                  ": an arm outside the triggering set was "
                                  "observed");
    }

    for (ArmId arm : tset) {
      ++report.checks;
      const double p = instance.triggering_prob(s, arm);
      const double freq = static_cast<double>(hits[arm]) / n;
      bool ok;
      if (p == 0.0 || p == 1.0) {
        ok = freq == p;
      } else {
        ok = std::abs(freq - p) <= 4.0 * std::sqrt(p * (1.0 - p) / n);
      }
      if (!ok) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "super arm %s arm %zu: frequency %.6f vs probability "
                      "%.6f exceeds tolerance",
                      describe(s).c_str(), arm, freq, p);
        report.violations.push_back(msg);
      }
    }

    ++report.checks;
    const double expected = instance.expected_reward(s, instance.means());
    const double mean_reward = reward_sum / n;
    if (std::abs(mean_reward - expected) > reward_tol) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "super arm %s: mean reward %.6f vs expected %.6f exceeds "
                    "tolerance %.6f",
                    describe(s).c_str(), mean_reward, expected, reward_tol);
      report.violations.push_back(msg);
    }
  }
  return report;
}

}  // namespace cmab
