#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmab/analysis.hpp"
#include "cmab/cascading.hpp"
#include "cmab/oracles.hpp"
#include "test_fixtures.hpp"

using cmab::ArmId;
using cmab::InstanceDiagnostics;
using cmab::SuperArm;

TEST_CASE("diagnostics of the small blb grid cell") {
  const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
  const InstanceDiagnostics diag = cmab::diagnose(instance);

  CHECK(diag.feasible_count == 12);  // ordered pairs of 4 pages
  CHECK(diag.opt_value == doctest::Approx(0.36).epsilon(1e-12));
  // both orderings of the two strong pages are optimal
  CHECK(diag.opt_set.size() == 2);
  CHECK(diag.opt_set[0].arms == std::vector<ArmId>{0, 1});
  CHECK(diag.opt_set[1].arms == std::vector<ArmId>{1, 0});
  CHECK(diag.s_star.arms == std::vector<ArmId>{0, 1});
  CHECK(diag.k_star == 2);
  CHECK(diag.k_tilde_star == 2);
  CHECK(diag.max_triggering_set == 2);
  // the worst slate pairs two weak pages: 0.36 - (1 - 0.95^2)
  CHECK(diag.gap_max == doctest::Approx(0.2625).epsilon(1e-12));
  for (ArmId arm = 0; arm < 4; ++arm) {
    REQUIRE(diag.gap_per_arm[arm].has_value());
    // every page appears in some (strong, weak) slate with gap 0.12
    CHECK(*diag.gap_per_arm[arm] == doctest::Approx(0.12).epsilon(1e-12));
    // slot 2 behind a strong page is the hardest to reach: 1 - 0.2
    CHECK(diag.p_per_arm[arm] == doctest::Approx(0.8).epsilon(1e-12));
  }
  CHECK(diag.p_star == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("all-optimal instances have no finite per-arm gaps") {
  // K = R: every ordering of the full page set is optimal
  const auto instance = cmab::make_blb(4, 4, 0.3, 0.1);
  const InstanceDiagnostics diag = cmab::diagnose(instance);
  CHECK(diag.opt_set.size() == 24);
  CHECK(diag.gap_max == 0.0);
  for (ArmId arm = 0; arm < 4; ++arm) {
    CHECK_FALSE(diag.gap_per_arm[arm].has_value());
  }
}

TEST_CASE("single-slot slates trigger every selected arm surely") {
  const auto instance = cmab::make_blb(4, 1, 0.2, 0.15);
  const InstanceDiagnostics diag = cmab::diagnose(instance);
  for (ArmId arm = 0; arm < 4; ++arm) {
    CHECK(diag.p_per_arm[arm] == 1.0);
  }
  CHECK(diag.p_star == 1.0);
}

TEST_CASE("diagnostics refuse oversized feasible sets") {
  const auto instance = cmab::make_blb(20, 8, 0.2, 0.15);
  CHECK_THROWS_AS(cmab::diagnose(instance), cmab::InstanceTooLarge);
}

TEST_CASE("sampling threshold formula") {
  SUBCASE("algebraic identity case") {
    // pick gap so that gap/(2B|S~|) - (k*~^2+2) eps/|S~| = sqrt(2 log T)
    const std::size_t horizon = 8;
    const double eps = 0.01;
    const double target = std::sqrt(2.0 * std::log(8.0));
    const std::size_t size = 3;
    const double gap = (target + (4.0 + 2.0) * eps / size) * 2.0 * 1.0 * size;
    CHECK(cmab::sampling_threshold(gap, size, 2, 1.0, eps, horizon) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("frozen reference value on the blb cell") {
    const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
    const InstanceDiagnostics diag = cmab::diagnose(instance);
    // weak-weak slate, gap 0.2625; value computed by an independent
    // evaluation of the displayed formula
    const double ell = cmab::sampling_threshold(instance, SuperArm{{2, 3}},
                                                diag, 1.0, 1e-4, 100000);
    CHECK(ell == doctest::Approx(5395.8125249850673).epsilon(1e-12));
  }

  SUBCASE("vanishing epsilon limit") {
    const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
    const InstanceDiagnostics diag = cmab::diagnose(instance);
    const double gap =
        diag.opt_value -
        instance.expected_reward(SuperArm{{2, 3}}, instance.means());
    const double limit =
        2.0 * std::log(100000.0) * (2.0 * 1.0 * 2.0 / gap) * (2.0 * 2.0 / gap);
    const double near = cmab::sampling_threshold(instance, SuperArm{{2, 3}},
                                                 diag, 1.0, 1e-12, 100000);
    CHECK(near == doctest::Approx(limit).epsilon(1e-6));
  }

  SUBCASE("monotone increasing in epsilon") {
    double previous = 0.0;
    for (double eps : {1e-6, 1e-4, 1e-3, 5e-3}) {
      const double ell = cmab::sampling_threshold(0.12, 2, 2, 1.0, eps, 1000);
      CHECK(ell > previous);
      previous = ell;
    }
  }

  SUBCASE("precondition violations name the failing inequality") {
    CHECK_THROWS_WITH_AS(
        static_cast<void>(cmab::sampling_threshold(0.12, 2, 2, 1.0, 0.7, 10)),
        doctest::Contains("1/sqrt(e)"), cmab::InvalidParameter);
    CHECK_THROWS_WITH_AS(
        static_cast<void>(cmab::sampling_threshold(0.12, 2, 2, 1.0, 0.0, 10)),
        doctest::Contains("1/sqrt(e)"), cmab::InvalidParameter);
    // gap must exceed 2*B*(k*~^2+2)*eps = 0.12 exactly here
    CHECK_THROWS_WITH_AS(
        static_cast<void>(cmab::sampling_threshold(0.12, 2, 2, 1.0, 0.01, 10)),
        doctest::Contains("gap"), cmab::InvalidParameter);
  }
}

TEST_CASE("trial threshold formula") {
  SUBCASE("no triggering slack") {
    CHECK(cmab::trial_threshold(7.5, 1.0, 1e-9) ==
          doctest::Approx(7.5).epsilon(1e-6));
  }
  SUBCASE("quarter probability mass quadruples the threshold") {
    CHECK(cmab::trial_threshold(10.0, 0.5, 0.5) ==
          doctest::Approx(40.0).epsilon(1e-12));
  }
  SUBCASE("frozen reference value on the blb cell") {
    const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
    const InstanceDiagnostics diag = cmab::diagnose(instance);
    const double value = cmab::trial_threshold(
        instance, SuperArm{{2, 3}}, ArmId{2}, diag, 1.0, 1e-4, 100000, 0.5);
    CHECK(value == doctest::Approx(13489.531312462668).epsilon(1e-12));
  }
  SUBCASE("decreasing in the triggering probability and in 1 - rho") {
    CHECK(cmab::trial_threshold(10.0, 0.9, 0.5) <
          cmab::trial_threshold(10.0, 0.5, 0.5));
    CHECK(cmab::trial_threshold(10.0, 0.5, 0.2) <
          cmab::trial_threshold(10.0, 0.5, 0.8));
  }
  SUBCASE("arms outside the triggering set are rejected") {
    const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
    const InstanceDiagnostics diag = cmab::diagnose(instance);
    CHECK_THROWS_AS(
        static_cast<void>(cmab::trial_threshold(
            instance, SuperArm{{2, 3}}, ArmId{0}, diag, 1.0, 1e-4, 100000, 0.5)),
        cmab::InvalidArm);
  }
  SUBCASE("maximum over suboptimal super arms") {
    const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
    const InstanceDiagnostics diag = cmab::diagnose(instance);
    // arm 2's worst case is the smaller-gap slate with a strong partner
    const auto max_value = cmab::max_trial_threshold(instance, ArmId{2}, diag,
                                                     1.0, 1e-4, 100000, 0.5);
    REQUIRE(max_value.has_value());
    const double strong_partner = cmab::trial_threshold(
        instance, SuperArm{{0, 2}}, ArmId{2}, diag, 1.0, 1e-4, 100000, 0.5);
    CHECK(*max_value == strong_partner);

    // no suboptimal super arm exists at all in the degenerate family
    const auto degenerate = cmab::make_blb(4, 4, 0.3, 0.1);
    const InstanceDiagnostics ddiag = cmab::diagnose(degenerate);
    CHECK_FALSE(cmab::max_trial_threshold(degenerate, ArmId{0}, ddiag, 1.0,
                                          1e-4, 100000, 0.5)
                    .has_value());
  }
}

TEST_CASE("regret bound components") {
  const auto instance = cmab::make_blb(4, 2, 0.2, 0.15);
  const InstanceDiagnostics diag = cmab::diagnose(instance);

  SUBCASE("frozen reference values, independently evaluated") {
    const cmab::RegretBound bound =
        cmab::cts_regret_bound(instance, diag, 1.0, 1e-4, 0.5, 1.0, 100000);
    CHECK(bound.log_t_term ==
          doctest::Approx(31011.247043690881).epsilon(1e-9));
    CHECK(bound.estimation_term ==
          doctest::Approx(1050000013.6499993).epsilon(1e-9));
    CHECK(bound.posterior_term ==
          doctest::Approx(1.6055615536868407e+27).epsilon(1e-9));
    CHECK(bound.total ==
          doctest::Approx(1.6055615536868407e+27).epsilon(1e-9));
    CHECK(bound.total ==
          bound.log_t_term + bound.estimation_term + bound.posterior_term);
  }

  SUBCASE("only the log term depends on the horizon") {
    const auto at_t =
        cmab::cts_regret_bound(instance, diag, 1.0, 1e-3, 0.4, 1.0, 1000);
    const auto at_2t =
        cmab::cts_regret_bound(instance, diag, 1.0, 1e-3, 0.4, 1.0, 2000);
    CHECK(at_2t.estimation_term == at_t.estimation_term);
    CHECK(at_2t.posterior_term == at_t.posterior_term);
    // the log term scales exactly with log T
    CHECK(at_2t.log_t_term / std::log(2000.0) ==
          doctest::Approx(at_t.log_t_term / std::log(1000.0)).epsilon(1e-12));
    CHECK(at_2t.log_t_term > at_t.log_t_term);
  }

  SUBCASE("certain triggering removes the indicator term") {
    const auto sure = cmab::make_blb(4, 1, 0.2, 0.15);
    const InstanceDiagnostics sure_diag = cmab::diagnose(sure);
    REQUIRE(sure_diag.p_star == 1.0);
    const auto bound =
        cmab::cts_regret_bound(sure, sure_diag, 1.0, 1e-3, 0.5, 1.0, 1000);
    // estimation term reduces to (3 + K~^2/((1-rho) p* eps^2)) * m * gap_max
    const double expected =
        (3.0 + 1.0 / (0.5 * 1.0 * 1e-6)) * 4.0 * sure_diag.gap_max;
    CHECK(bound.estimation_term == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(
        cmab::cts_regret_bound(instance, diag, 1.0, 1e-4, 1.5, 1.0, 1000),
        cmab::InvalidParameter);
    CHECK_THROWS_AS(
        cmab::cts_regret_bound(instance, diag, 1.0, 0.7, 0.5, 1.0, 1000),
        cmab::InvalidParameter);
    CHECK_THROWS_AS(
        cmab::cts_regret_bound(instance, diag, 1.0, 1e-4, 0.5, -1.0, 1000),
        cmab::InvalidParameter);
    // epsilon large enough to break the per-super-arm gap condition
    CHECK_THROWS_AS(
        cmab::cts_regret_bound(instance, diag, 1.0, 0.02, 0.5, 1.0, 1000),
        cmab::InvalidParameter);
  }
}

TEST_CASE("gap consistency over the whole feasible set") {
  const auto instance = cmab::make_blb(5, 2, 0.3, 0.2);
  const InstanceDiagnostics diag = cmab::diagnose(instance);
  std::size_t optimal_count = 0;
  for (const SuperArm& s : instance.enumerate_feasible()) {
    const double gap = cmab::regret_increment(instance, diag.opt_value, s);
    CHECK(gap >= 0.0);
    CHECK(gap <= diag.gap_max);
    if (gap == 0.0) ++optimal_count;
  }
  CHECK(optimal_count == diag.opt_set.size());
}

TEST_CASE("per-arm minima lower-bound every triggering probability") {
  const auto instance = cmab::make_blb(5, 3, 0.3, 0.2);
  const InstanceDiagnostics diag = cmab::diagnose(instance);
  for (const SuperArm& s : instance.enumerate_feasible()) {
    for (cmab::ArmId arm : instance.triggering_set(s)) {
      CHECK(instance.triggering_prob(s, arm) >= diag.p_per_arm[arm]);
    }
  }
}

TEST_CASE("diagnostics serialize to JSON with explicit infinities") {
  const auto instance = cmab::make_blb(4, 4, 0.3, 0.1);
  const auto doc = cmab::diagnostics_to_json(cmab::diagnose(instance));
  CHECK(doc.at("gap_per_arm").at(0).is_null());
  // worst slot for any page: last, behind the three others
  CHECK(doc.at("p_star").get<double>() ==
        doctest::Approx(0.7 * 0.7 * 0.7).epsilon(1e-12));
  CHECK(doc.at("opt_set_size").get<std::size_t>() == 24);
}
