#include "cmab/cascading.hpp"

#include <algorithm>
#include <string>

namespace cmab {

namespace {

// Multiplies under a cap; returns cap + 1 on overflow or when above cap.
std::size_t capped_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

}  // namespace

CascadingInstance::CascadingInstance(std::size_t users, std::size_t pages,
                                     std::size_t slate_size,
                                     std::vector<double> attraction_flat,
                                     CascadeMode mode)
    : users_(users),
      pages_(pages),
      slate_size_(slate_size),
      mode_(mode),
      means_(std::move(attraction_flat)) {
  if (users_ == 0 || pages_ == 0) {
    throw InvalidParameter("cascading: need at least one user and one page");
  }
  if (slate_size_ == 0 || slate_size_ > pages_) {
    throw InvalidParameter("cascading: slate size must satisfy 1 <= K <= R");
  }
  if (means_.size() != users_ * pages_) {
    throw InvalidParameter("cascading: attraction matrix must be L x R");
  }
  for (double p : means_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidParameter("cascading: attractions must lie in [0, 1]");
    }
  }
}

void CascadingInstance::validate_slate(const SuperArm& super_arm) const {
  if (super_arm.arms.size() != users_ * slate_size_) {
    throw InvalidSuperArm("slate: expected " +
                          std::to_string(users_ * slate_size_) + " arms, got " +
                          std::to_string(super_arm.arms.size()));
  }
  for (std::size_t u = 0; u < users_; ++u) {
    const ArmId* slate = super_arm.arms.data() + u * slate_size_;
    for (std::size_t k = 0; k < slate_size_; ++k) {
      const ArmId arm = slate[k];
      if (arm >= num_arms() || user_of(arm) != u) {
        throw InvalidSuperArm("slate: arm " + std::to_string(arm) +
                              " does not belong to user " + std::to_string(u));
      }
      for (std::size_t k2 = 0; k2 < k; ++k2) {
        if (slate[k2] == arm) {
          throw InvalidSuperArm("slate: duplicate arm " + std::to_string(arm));
        }
      }
    }
  }
}

TriggerOutcome CascadingInstance::trigger(const SuperArm& super_arm,
                                          const OutcomeVector& outcomes,
                                          Rng& /*rng*/) const {
  validate_slate(super_arm);
  TriggerOutcome out;
  out.feedback.entries.reserve(super_arm.arms.size());
  for (std::size_t u = 0; u < users_; ++u) {
    const ArmId* slate = super_arm.arms.data() + u * slate_size_;
    bool user_rewarded = (mode_ == CascadeMode::kConjunctive);
    for (std::size_t k = 0; k < slate_size_; ++k) {
      const ArmId arm = slate[k];
      const double x = outcomes[arm];
      out.feedback.entries.emplace_back(arm, x);
      if (mode_ == CascadeMode::kDisjunctive) {
        if (x != 0.0) {  // first click: user done, reward earned
          user_rewarded = true;
          break;
        }
      } else {
        if (x == 0.0) {  // first unattractive page: user abandons
          user_rewarded = false;
          break;
        }
      }
    }
    if (user_rewarded) out.reward += 1.0;
  }
  out.triggered.arms.reserve(out.feedback.entries.size());
  for (const auto& [arm, x] : out.feedback.entries) {
    out.triggered.arms.push_back(arm);
  }
  std::sort(out.triggered.arms.begin(), out.triggered.arms.end());
  return out;
}

std::vector<ArmId> CascadingInstance::triggering_set(
    const SuperArm& super_arm) const {
  validate_slate(super_arm);
  std::vector<ArmId> set;
  set.reserve(super_arm.arms.size());
  for (std::size_t u = 0; u < users_; ++u) {
    const ArmId* slate = super_arm.arms.data() + u * slate_size_;
    double reach = 1.0;  // probability the scan reaches the current slot
    for (std::size_t k = 0; k < slate_size_; ++k) {
      if (reach > 0.0) set.push_back(slate[k]);
      const double p = means_[slate[k]];
      reach *= (mode_ == CascadeMode::kDisjunctive) ? (1.0 - p) : p;
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

double CascadingInstance::triggering_prob(const SuperArm& super_arm,
                                          ArmId arm) const {
  validate_slate(super_arm);
  if (arm >= num_arms()) {
    throw InvalidArm("triggering_prob: arm id " + std::to_string(arm) +
                     " out of range");
  }
  const std::size_t u = user_of(arm);
  const ArmId* slate = super_arm.arms.data() + u * slate_size_;
  double reach = 1.0;
  for (std::size_t k = 0; k < slate_size_; ++k) {
    if (slate[k] == arm) return k == 0 ? 1.0 : reach;
    const double p = means_[slate[k]];
    reach *= (mode_ == CascadeMode::kDisjunctive) ? (1.0 - p) : p;
  }
  return 0.0;
}

double CascadingInstance::expected_reward(const SuperArm& super_arm,
                                          const OutcomeVector& theta) const {
  validate_slate(super_arm);
  if (theta.size() != num_arms()) {
    throw InvalidParameter("expected_reward: theta must have length m");
  }
  // Accumulate each user's product over pages in ascending arm order, so the
  // value depends only on the chosen page set, bit-for-bit.
  thread_local std::vector<ArmId> slot_order;
  double total = 0.0;
  for (std::size_t u = 0; u < users_; ++u) {
    const ArmId* slate = super_arm.arms.data() + u * slate_size_;
    slot_order.assign(slate, slate + slate_size_);
    std::sort(slot_order.begin(), slot_order.end());
    double prod = 1.0;
    if (mode_ == CascadeMode::kDisjunctive) {
      for (ArmId arm : slot_order) prod *= (1.0 - theta[arm]);
      total += 1.0 - prod;
    } else {
      for (ArmId arm : slot_order) prod *= theta[arm];
      total += prod;
    }
  }
  return total;
}

std::vector<SuperArm> CascadingInstance::enumerate_feasible(
    std::size_t cap) const {
  // |feasible| = (R permute K)^L ordered slates.
  std::size_t per_user = 1;
  for (std::size_t k = 0; k < slate_size_; ++k) {
    per_user = capped_mul(per_user, pages_ - k, cap);
  }
  std::size_t total = 1;
  for (std::size_t u = 0; u < users_ && total <= cap; ++u) {
    total = capped_mul(total, per_user, cap);
  }
  if (total > cap) {
    throw InstanceTooLarge(
        "cascading: feasible set exceeds the enumeration cap of " +
        std::to_string(cap));
  }

  // All ordered K-permutations of one user's pages, lexicographic.
  std::vector<std::vector<std::size_t>> user_slates;
  user_slates.reserve(per_user);
  std::vector<std::size_t> current;
  std::vector<bool> used(pages_, false);
  auto dfs = [&](auto&& self) -> void {
    if (current.size() == slate_size_) {
      user_slates.push_back(current);
      return;
    }
    for (std::size_t j = 0; j < pages_; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.push_back(j);
      self(self);
      current.pop_back();
      used[j] = false;
    }
  };
  dfs(dfs);

  std::vector<SuperArm> feasible;
  feasible.reserve(total);
  std::vector<std::size_t> pick(users_, 0);
  for (;;) {
    SuperArm s;
    s.arms.reserve(users_ * slate_size_);
    for (std::size_t u = 0; u < users_; ++u) {
      for (std::size_t page : user_slates[pick[u]]) {
        s.arms.push_back(arm_id(u, page));
      }
    }
    feasible.push_back(std::move(s));
    std::size_t u = users_;
    while (u-- > 0) {
      if (++pick[u] < user_slates.size()) break;
      pick[u] = 0;
      if (u == 0) return feasible;
    }
  }
}

CascadingInstance make_blb(std::size_t pages, std::size_t slate_size, double p,
                           double delta) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidParameter("blb: need 0 < p <= 1");
  }
  if (!(delta > 0.0 && delta < p)) {
    throw InvalidParameter("blb: need 0 < delta < p");
  }
  if (slate_size > pages) {
    throw InvalidParameter("blb: need K <= R");
  }
  std::vector<double> attraction(pages);
  for (std::size_t j = 0; j < pages; ++j) {
    attraction[j] = j < slate_size ? p : p - delta;
  }
  return CascadingInstance(1, pages, slate_size, std::move(attraction),
                           CascadeMode::kDisjunctive);
}

CascadingInstance make_uniform_random(std::size_t users, std::size_t pages,
                                      std::size_t slate_size, Rng& rng) {
  std::vector<double> attraction(users * pages);
  for (double& p : attraction) p = rng.uniform01();
  return CascadingInstance(users, pages, slate_size, std::move(attraction),
                           CascadeMode::kDisjunctive);
}

}  // namespace cmab
