// Exact optimization oracles: map a parameter vector to a super arm that
// maximizes the expected reward under that vector. Both the learner loop and
// the regret accounting depend on these being exact and deterministic.
#pragma once

#include <functional>

#include "cmab/cascading.hpp"
#include "cmab/instance.hpp"

namespace cmab {

struct OracleResult {
  SuperArm super_arm;
  double value = 0.0;  // expected reward of super_arm under the input vector
};

using Oracle = std::function<OracleResult(const OutcomeVector&)>;

// For each user independently picks the K pages with the largest theta;
// both cascade rewards are monotone symmetric in the chosen values, so the
// per-user top-K set is optimal in either mode. Ties break toward the
// smaller page index; slots are ordered by descending theta, then ascending
// index, so trajectories replay exactly.
OracleResult cascading_oracle(const CascadingInstance& instance,
                              const OutcomeVector& theta);

// Exhaustive argmax over the feasible set; ties break toward the first
// maximizer in enumeration order (lexicographic over arm-id lists).
OracleResult brute_force_oracle(const ProblemInstance& instance,
                                const OutcomeVector& theta,
                                std::size_t cap = kDefaultEnumerationCap);

// The exact oracle the harness wires to a learner: the closed-form slate
// oracle for cascading instances, brute force otherwise.
Oracle exact_oracle_for(const ProblemInstance& instance);

}  // namespace cmab
