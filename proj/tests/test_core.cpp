#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cmab/cascading.hpp"
#include "cmab/instance.hpp"
#include "cmab/oracles.hpp"
#include "cmab/tabular.hpp"
#include "test_fixtures.hpp"

using cmab::ArmId;
using cmab::OutcomeVector;
using cmab::Rng;
using cmab::SuperArm;

TEST_CASE("project restricts a parameter vector to a subset") {
  const OutcomeVector theta{0.2, 0.5, 0.9};

  auto restricted = cmab::project(theta, {0, 2});
  CHECK(restricted.size() == 2);
  CHECK(restricted.at(0) == 0.2);
  CHECK(restricted.at(2) == 0.9);

  CHECK(cmab::project({0.2, 0.5}, {}).empty());

  auto full = cmab::project(theta, {0, 1, 2});
  CHECK(full.size() == 3);
  CHECK(full.at(1) == 0.5);

  // order of the subset does not matter
  CHECK(cmab::project(theta, {2, 0}) == restricted);

  CHECK_THROWS_AS(cmab::project(theta, {3}), cmab::InvalidArm);
}

TEST_CASE("regret_increment is the expected-value gap") {
  const auto instance = cmab::make_blb(16, 2, 0.2, 0.15);
  const double opt =
      cmab::cascading_oracle(instance, instance.means()).value;
  CHECK(opt == doctest::Approx(0.36).epsilon(1e-12));

  // optimal slate: the two pages at attraction 0.2
  CHECK(cmab::regret_increment(instance, opt, SuperArm{{0, 1}}) == 0.0);
  // one optimal page, one suboptimal: 0.36 - (1 - 0.8*0.95)
  CHECK(cmab::regret_increment(instance, opt, SuperArm{{1, 3}}) ==
        doctest::Approx(0.12).epsilon(1e-12));
  // two suboptimal pages: 0.36 - (1 - 0.95^2)
  CHECK(cmab::regret_increment(instance, opt, SuperArm{{3, 4}}) ==
        doctest::Approx(0.2625).epsilon(1e-12));
}

namespace {

// One simulated round must satisfy: triggered arms within the triggering
// set, feedback entries exactly the triggered arms with the round's
// outcomes. Returns the triggered set for extra checks.
cmab::TriggeredSet check_round(const cmab::ProblemInstance& instance,
                               const SuperArm& s, Rng& rng) {
  const std::vector<ArmId> tset = instance.triggering_set(s);
  const OutcomeVector x = instance.sample_outcomes(rng);
  const cmab::TriggerOutcome out = instance.trigger(s, x, rng);

  REQUIRE(std::is_sorted(out.triggered.arms.begin(),
                         out.triggered.arms.end()));
  for (ArmId arm : out.triggered.arms) {
    REQUIRE(std::binary_search(tset.begin(), tset.end(), arm));
  }
  REQUIRE(out.feedback.entries.size() == out.triggered.arms.size());
  for (const auto& [arm, outcome] : out.feedback.entries) {
    REQUIRE(out.triggered.contains(arm));
    REQUIRE(outcome == x[arm]);
  }
  return out.triggered;
}

}  // namespace

TEST_CASE("sampled rounds respect the triggering-set containment chain") {
  Rng rng(11);

  SUBCASE("cascading, both modes") {
    for (auto mode :
         {cmab::CascadeMode::kDisjunctive, cmab::CascadeMode::kConjunctive}) {
      const cmab::CascadingInstance instance(
          2, 4, 2, {0.1, 0.9, 0.4, 0.6, 0.3, 0.3, 0.8, 0.5}, mode);
      for (int round = 0; round < 2000; ++round) {
        const SuperArm s = testutil::random_slate(instance, rng);
        check_round(instance, s, rng);
      }
    }
  }

  SUBCASE("tabular: the selected arms are always observed") {
    const auto instance = testutil::simple_tabular();
    for (const SuperArm& s : instance.enumerate_feasible()) {
      for (int round = 0; round < 2000; ++round) {
        const cmab::TriggeredSet triggered = check_round(instance, s, rng);
        for (ArmId arm : s.arms) REQUIRE(triggered.contains(arm));
      }
    }
  }
}

TEST_CASE("empirical mean reward converges to the analytic expectation") {
  Rng rng(12);
  const int n = 100000;

  SUBCASE("two-user disjunctive slate") {
    const cmab::CascadingInstance instance(
        2, 4, 2, {0.1, 0.9, 0.4, 0.6, 0.3, 0.3, 0.8, 0.5},
        cmab::CascadeMode::kDisjunctive);
    const SuperArm s{{2, 0, 5, 6}};
    const double expected = instance.expected_reward(s, instance.means());
    double sum = 0.0;
    OutcomeVector x;
    for (int i = 0; i < n; ++i) {
      instance.sample_outcomes(rng, x);
      sum += instance.trigger(s, x, rng).reward;
    }
    const double r_max = instance.max_reward();
    CHECK(std::abs(sum / n - expected) <= 4.0 * std::sqrt(r_max * r_max / n));
  }

  SUBCASE("tabular fixture") {
    const auto instance = testutil::simple_tabular();
    const SuperArm s{{0, 1}};
    const double expected = instance.expected_reward(s, instance.means());
    CHECK(expected == doctest::Approx(1.125).epsilon(1e-12));
    double sum = 0.0;
    OutcomeVector x;
    for (int i = 0; i < n; ++i) {
      instance.sample_outcomes(rng, x);
      sum += instance.trigger(s, x, rng).reward;
    }
    const double r_max = instance.max_reward();
    CHECK(std::abs(sum / n - expected) <= 4.0 * std::sqrt(r_max * r_max / n));
  }
}

TEST_CASE("expected reward is Lipschitz in the projected parameters") {
  Rng rng(13);

  auto audit = [&](const cmab::ProblemInstance& instance, auto make_arm) {
    const double lipschitz = instance.lipschitz_constant();
    for (int trial = 0; trial < 1000; ++trial) {
      const SuperArm s = make_arm();
      const OutcomeVector theta =
          testutil::random_theta(instance.num_arms(), rng);
      const OutcomeVector theta2 =
          testutil::random_theta(instance.num_arms(), rng);
      const std::vector<ArmId> tset = instance.triggering_set(s);
      const double lhs = std::abs(instance.expected_reward(s, theta) -
                                  instance.expected_reward(s, theta2));
      CHECK(lhs <= lipschitz * cmab::l1_distance(theta, theta2, tset));
    }
  };

  SUBCASE("disjunctive, B = 1") {
    const cmab::CascadingInstance instance(
        2, 5, 3, {0.1, 0.9, 0.4, 0.6, 0.2, 0.3, 0.3, 0.8, 0.5, 0.7},
        cmab::CascadeMode::kDisjunctive);
    audit(instance, [&] { return testutil::random_slate(instance, rng); });
  }

  SUBCASE("conjunctive, B = 1") {
    const cmab::CascadingInstance instance(
        1, 5, 3, {0.15, 0.95, 0.45, 0.65, 0.25},
        cmab::CascadeMode::kConjunctive);
    audit(instance, [&] { return testutil::random_slate(instance, rng); });
  }

  SUBCASE("tabular linear, B = max weight") {
    const auto instance = testutil::simple_tabular();
    const auto feasible = instance.enumerate_feasible();
    std::size_t pick = 0;
    audit(instance, [&] { return feasible[pick++ % feasible.size()]; });
  }
}
