// Shared vocabulary for combinatorial bandits with probabilistically
// triggered arms: arm ids, super arms, outcome vectors, triggered sets and
// semi-bandit observations, plus the error types thrown across the library.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmab {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

// Base arms are 0-indexed in [0, m).
using ArmId = std::size_t;

// Length-m vector of values in [0,1]. Used for realized outcomes X(t) as
// well as for parameter vectors (true means, posterior samples, UCB indices).
using OutcomeVector = std::vector<double>;

class InvalidArm : public std::out_of_range {
 public:
  explicit InvalidArm(const std::string& what) : std::out_of_range(what) {}
};

class InvalidSuperArm : public std::invalid_argument {
 public:
  explicit InvalidSuperArm(const std::string& what)
      : std::invalid_argument(what) {}
};

class InfeasibleSuperArm : public std::invalid_argument {
 public:
  explicit InfeasibleSuperArm(const std::string& what)
      : std::invalid_argument(what) {}
};

class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what)
      : std::invalid_argument(what) {}
};

class InstanceTooLarge : public std::runtime_error {
 public:
  explicit InstanceTooLarge(const std::string& what)
      : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A feasible action. `arms` is ordered: slate-structured instances read it
// as L consecutive blocks of K slots each, and slot order matters for which
// arms get observed (not for the expected reward).
struct SuperArm {
  std::vector<ArmId> arms;

  bool operator==(const SuperArm&) const = default;
};

// The arms whose outcomes were revealed in one round, sorted ascending.
struct TriggeredSet {
  std::vector<ArmId> arms;

  bool contains(ArmId arm) const {
    return std::binary_search(arms.begin(), arms.end(), arm);
  }

  bool operator==(const TriggeredSet&) const = default;
};

// Semi-bandit feedback: (arm, outcome) pairs for exactly the triggered arms,
// in the environment's scan order. Learners consume entries in this order,
// which keeps posterior updates replayable.
struct Observation {
  std::vector<std::pair<ArmId, double>> entries;

  bool operator==(const Observation&) const = default;
};

// Restriction of a parameter vector to a subset of arms.
inline std::map<ArmId, double> project(const OutcomeVector& theta,
                                       const std::vector<ArmId>& subset) {
  std::map<ArmId, double> out;
  for (ArmId arm : subset) {
    if (arm >= theta.size()) {
      throw InvalidArm("project: arm id " + std::to_string(arm) +
                       " out of range [0, " + std::to_string(theta.size()) +
                       ")");
    }
    out.emplace(arm, theta[arm]);
  }
  return out;
}

// l1 distance between two parameter vectors restricted to `subset`.
inline double l1_distance(const OutcomeVector& a, const OutcomeVector& b,
                          const std::vector<ArmId>& subset) {
  double total = 0.0;
  for (ArmId arm : subset) {
    if (arm >= a.size() || arm >= b.size()) {
      throw InvalidArm("l1_distance: arm id " + std::to_string(arm) +
                       " out of range");
    }
    total += std::abs(a[arm] - b[arm]);
  }
  return total;
}

}  // namespace cmab
