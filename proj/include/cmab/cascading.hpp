// Cascading click-model environments. L users each get a slate of K pages
// out of R; base arm (user i, page j) has id i*R + j and mean attraction
// p_{i,j}. Disjunctive mode: a user scans the slate and clicks the first
// attractive page (reward = number of users who clicked). Conjunctive mode:
// a user reports the first unattractive page (reward = number of users whose
// whole slate is attractive). In both modes feedback stops at the first
// decisive page, which is what makes later slots probabilistically
// triggered rather than always observed.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cmab/instance.hpp"

namespace cmab {

enum class CascadeMode { kDisjunctive, kConjunctive };

class CascadingInstance : public ProblemInstance {
 public:
  CascadingInstance(std::size_t users, std::size_t pages,
                    std::size_t slate_size,
                    std::vector<double> attraction_flat, CascadeMode mode);

  std::size_t users() const { return users_; }
  std::size_t pages() const { return pages_; }
  std::size_t slate_size() const { return slate_size_; }
  CascadeMode mode() const { return mode_; }

  ArmId arm_id(std::size_t user, std::size_t page) const {
    return user * pages_ + page;
  }
  std::size_t user_of(ArmId arm) const { return arm / pages_; }
  std::size_t page_of(ArmId arm) const { return arm % pages_; }
  double attraction(std::size_t user, std::size_t page) const {
    return means_[arm_id(user, page)];
  }

  std::size_t num_arms() const override { return users_ * pages_; }
  const OutcomeVector& means() const override { return means_; }
  TriggerOutcome trigger(const SuperArm& super_arm,
                         const OutcomeVector& outcomes,
                         Rng& rng) const override;
  std::vector<ArmId> triggering_set(const SuperArm& super_arm) const override;
  double triggering_prob(const SuperArm& super_arm, ArmId arm) const override;
  double expected_reward(const SuperArm& super_arm,
                         const OutcomeVector& theta) const override;
  std::vector<SuperArm> enumerate_feasible(
      std::size_t cap = kDefaultEnumerationCap) const override;
  double lipschitz_constant() const override { return 1.0; }
  double max_reward() const override { return static_cast<double>(users_); }

  // Throws InvalidSuperArm unless `super_arm` is L blocks of K distinct
  // pages, each block belonging to its user.
  void validate_slate(const SuperArm& super_arm) const;

 private:
  std::size_t users_;
  std::size_t pages_;
  std::size_t slate_size_;
  CascadeMode mode_;
  OutcomeVector means_;  // flattened L x R attraction matrix
};

// Single-user disjunctive family: K pages at attraction p, the remaining
// R - K pages at p - delta.
CascadingInstance make_blb(std::size_t pages, std::size_t slate_size, double p,
                           double delta);

// Disjunctive instance with i.i.d. Uniform[0,1) attractions drawn from `rng`.
CascadingInstance make_uniform_random(std::size_t users, std::size_t pages,
                                      std::size_t slate_size, Rng& rng);

}  // namespace cmab
