// Monte Carlo self-check of an instance: plays every feasible super arm many
// times and compares empirical triggering frequencies and mean realized
// reward against the instance's analytic answers.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmab/instance.hpp"
#include "cmab/rng.hpp"

namespace cmab {

struct AuditReport {
  std::size_t super_arms_checked = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

// Frequency tolerance is 4*sqrt(p(1-p)/samples); probabilities 0 and 1 are
// checked exactly. Mean reward tolerance is 4*(max_reward/2)/sqrt(samples).
// Throws InstanceTooLarge when the feasible set exceeds `enumeration_cap`.
AuditReport validate_instance(const ProblemInstance& instance,
                              std::size_t samples, Rng& rng,
                              std::size_t enumeration_cap = 4096);

}  // namespace cmab
