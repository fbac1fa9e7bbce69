#include "cmab/oracles.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace cmab {

OracleResult cascading_oracle(const CascadingInstance& instance,
                              const OutcomeVector& theta) {
  if (theta.size() != instance.num_arms()) {
    throw InvalidParameter("oracle: theta must have length m");
  }
  const std::size_t users = instance.users();
  const std::size_t pages = instance.pages();
  const std::size_t slate = instance.slate_size();

  OracleResult result;
  result.super_arm.arms.reserve(users * slate);
  thread_local std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t u = 0; u < users; ++u) {
    ranked.clear();
    for (std::size_t j = 0; j < pages; ++j) {
      ranked.emplace_back(theta[instance.arm_id(u, j)], j);
    }
    std::partial_sort(ranked.begin(), ranked.begin() + slate, ranked.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    for (std::size_t k = 0; k < slate; ++k) {
      result.super_arm.arms.push_back(instance.arm_id(u, ranked[k].second));
    }
  }
  result.value = instance.expected_reward(result.super_arm, theta);
  return result;
}

OracleResult brute_force_oracle(const ProblemInstance& instance,
                                const OutcomeVector& theta, std::size_t cap) {
  const std::vector<SuperArm> feasible = instance.enumerate_feasible(cap);
  OracleResult best;
  bool first = true;
  for (const SuperArm& s : feasible) {
    const double value = instance.expected_reward(s, theta);
    if (first || value > best.value) {
      best.super_arm = s;
      best.value = value;
      first = false;
    }
  }
  return best;
}

Oracle exact_oracle_for(const ProblemInstance& instance) {
  if (const auto* cascading =
          dynamic_cast<const CascadingInstance*>(&instance)) {
    return [cascading](const OutcomeVector& theta) {
      return cascading_oracle(*cascading, theta);
    };
  }
  const ProblemInstance* generic = &instance;
  return [generic](const OutcomeVector& theta) {
    return brute_force_oracle(*generic, theta);
  };
}

}  // namespace cmab
