#include "cmab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cmab {

namespace {

void check_epsilon(double epsilon) {
  const double limit = 1.0 / std::sqrt(std::exp(1.0));
  if (!(epsilon > 0.0 && epsilon <= limit)) {
    throw InvalidParameter(
        "epsilon violates 0 < epsilon <= 1/sqrt(e): epsilon = " +
        std::to_string(epsilon));
  }
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw InvalidParameter("rho must lie in (0, 1): rho = " +
                           std::to_string(rho));
  }
}

void check_gap_slack(double gap, double lipschitz, std::size_t k_tilde_star,
                     double epsilon) {
  const double slack =
      2.0 * lipschitz *
      (static_cast<double>(k_tilde_star * k_tilde_star) + 2.0) * epsilon;
  if (!(gap > slack)) {
    throw InvalidParameter(
        "epsilon violates gap > 2*B*(k_tilde_star^2 + 2)*epsilon: gap = " +
        std::to_string(gap) + ", slack = " + std::to_string(slack));
  }
}

}  // namespace

InstanceDiagnostics diagnose(const ProblemInstance& instance,
                             std::size_t cap) {
  const std::vector<SuperArm> feasible = instance.enumerate_feasible(cap);
  const OutcomeVector& mu = instance.means();
  const std::size_t m = instance.num_arms();

  std::vector<double> values(feasible.size());
  double opt = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < feasible.size(); ++s) {
    values[s] = instance.expected_reward(feasible[s], mu);
    opt = std::max(opt, values[s]);
  }

  InstanceDiagnostics diag;
  diag.opt_value = opt;
  diag.feasible_count = feasible.size();
  diag.gap_per_arm.assign(m, std::nullopt);
  diag.p_per_arm.assign(m, 1.0);
  std::vector<bool> triggerable(m, false);

  std::size_t best_star_size = 0;
  for (std::size_t s = 0; s < feasible.size(); ++s) {
    const std::vector<ArmId> tset = instance.triggering_set(feasible[s]);
    diag.max_triggering_set = std::max(diag.max_triggering_set, tset.size());
    const bool optimal = values[s] == opt;
    const double gap = opt - values[s];
    diag.gap_max = std::max(diag.gap_max, gap);
    for (ArmId arm : tset) {
      const double p = instance.triggering_prob(feasible[s], arm);
      if (!triggerable[arm]) {
        triggerable[arm] = true;
        diag.p_per_arm[arm] = p;
      } else {
        diag.p_per_arm[arm] = std::min(diag.p_per_arm[arm], p);
      }
      if (!optimal) {
        if (!diag.gap_per_arm[arm] || gap < *diag.gap_per_arm[arm]) {
          diag.gap_per_arm[arm] = gap;
        }
      }
    }
    if (optimal) {
      diag.opt_set.push_back(feasible[s]);
      if (diag.opt_set.size() == 1 || tset.size() < best_star_size) {
        best_star_size = tset.size();
        diag.s_star = feasible[s];
      }
    }
  }
  diag.k_star = diag.s_star.arms.size();
  diag.k_tilde_star = best_star_size;
  diag.p_star = 1.0;
  for (ArmId arm = 0; arm < m; ++arm) {
    diag.p_star = std::min(diag.p_star, diag.p_per_arm[arm]);
  }
  return diag;
}

nlohmann::json diagnostics_to_json(const InstanceDiagnostics& diag) {
  nlohmann::json out;
  out["opt_value"] = diag.opt_value;
  out["opt_set_size"] = diag.opt_set.size();
  nlohmann::json opt_set = nlohmann::json::array();
  for (const SuperArm& s : diag.opt_set) opt_set.push_back(s.arms);
  out["opt_set"] = std::move(opt_set);
  out["s_star"] = diag.s_star.arms;
  out["k_star"] = diag.k_star;
  out["k_tilde_star"] = diag.k_tilde_star;
  out["gap_max"] = diag.gap_max;
  nlohmann::json gaps = nlohmann::json::array();
  for (const auto& g : diag.gap_per_arm) {
    if (g) {
      gaps.push_back(*g);
    } else {
      gaps.push_back(nullptr);  // no suboptimal super arm triggers this arm
    }
  }
  out["gap_per_arm"] = std::move(gaps);
  out["p_per_arm"] = diag.p_per_arm;
  out["p_star"] = diag.p_star;
  out["max_triggering_set_size"] = diag.max_triggering_set;
  out["feasible_count"] = diag.feasible_count;
  return out;
}

double sampling_threshold(double gap, std::size_t triggering_set_size,
                          std::size_t k_tilde_star, double lipschitz,
                          double epsilon, std::size_t horizon) {
  check_epsilon(epsilon);
  check_gap_slack(gap, lipschitz, k_tilde_star, epsilon);
  const double size = static_cast<double>(triggering_set_size);
  const double inner =
      gap / (2.0 * lipschitz * size) -
      (static_cast<double>(k_tilde_star * k_tilde_star) + 2.0) * epsilon / size;
  return 2.0 * std::log(static_cast<double>(horizon)) / (inner * inner);
}

double sampling_threshold(const ProblemInstance& instance, const SuperArm& s,
                          const InstanceDiagnostics& diag, double lipschitz,
                          double epsilon, std::size_t horizon) {
  const double gap =
      diag.opt_value - instance.expected_reward(s, instance.means());
  return sampling_threshold(gap, instance.triggering_set(s).size(),
                            diag.k_tilde_star, lipschitz, epsilon, horizon);
}

double trial_threshold(double sampling_threshold_value,
                       double min_triggering_prob, double rho) {
  check_rho(rho);
  if (!(min_triggering_prob > 0.0 && min_triggering_prob <= 1.0)) {
    throw InvalidParameter("trial_threshold: triggering probability must lie in (0, 1]");
  }
  return sampling_threshold_value / ((1.0 - rho) * min_triggering_prob);
}

double trial_threshold(const ProblemInstance& instance, const SuperArm& s,
                       ArmId arm, const InstanceDiagnostics& diag,
                       double lipschitz, double epsilon, std::size_t horizon,
                       double rho) {
  const std::vector<ArmId> tset = instance.triggering_set(s);
  if (!std::binary_search(tset.begin(), tset.end(), arm)) {
    throw InvalidArm("trial_threshold: arm " + std::to_string(arm) +
                     " is not in the triggering set of the super arm");
  }
  return trial_threshold(
      sampling_threshold(instance, s, diag, lipschitz, epsilon, horizon),
      diag.p_per_arm[arm], rho);
}

std::optional<double> max_trial_threshold(const ProblemInstance& instance,
                                          ArmId arm,
                                          const InstanceDiagnostics& diag,
                                          double lipschitz, double epsilon,
                                          std::size_t horizon, double rho,
                                          std::size_t cap) {
  std::optional<double> best;
  for (const SuperArm& s : instance.enumerate_feasible(cap)) {
    const double value = instance.expected_reward(s, instance.means());
    if (value == diag.opt_value) continue;
    const std::vector<ArmId> tset = instance.triggering_set(s);
    if (!std::binary_search(tset.begin(), tset.end(), arm)) continue;
    const double candidate =
        trial_threshold(instance, s, arm, diag, lipschitz, epsilon, horizon, rho);
    if (!best || candidate > *best) best = candidate;
  }
  return best;
}

RegretBound cts_regret_bound(const ProblemInstance& instance,
                             const InstanceDiagnostics& diag, double lipschitz,
                             double epsilon, double rho, double alpha,
                             std::size_t horizon, std::size_t cap) {
  check_epsilon(epsilon);
  check_rho(rho);
  if (!(alpha > 0.0)) {
    throw InvalidParameter("alpha must be positive");
  }
  const std::size_t m = instance.num_arms();
  const double k_tilde = static_cast<double>(diag.k_tilde_star);
  const double slack_coeff = k_tilde * k_tilde + 2.0;
  const double gap_slack = 2.0 * lipschitz * slack_coeff * epsilon;
  const double log_t = std::log(static_cast<double>(horizon));

  // Per-arm maxima over suboptimal super arms whose triggering set contains
  // the arm. Arms never triggered by a suboptimal super arm contribute 0.
  std::vector<double> per_arm(m, 0.0);
  for (const SuperArm& s : instance.enumerate_feasible(cap)) {
    const double value = instance.expected_reward(s, instance.means());
    if (value == diag.opt_value) continue;
    const double gap = diag.opt_value - value;
    check_gap_slack(gap, lipschitz, diag.k_tilde_star, epsilon);
    const std::vector<ArmId> tset = instance.triggering_set(s);
    const double base = 16.0 * lipschitz * lipschitz *
                        static_cast<double>(tset.size()) * log_t /
                        ((1.0 - rho) * (gap - gap_slack));
    for (ArmId arm : tset) {
      per_arm[arm] = std::max(per_arm[arm], base / diag.p_per_arm[arm]);
    }
  }

  RegretBound bound;
  for (double v : per_arm) bound.log_t_term += v;

  const double k_max = static_cast<double>(diag.max_triggering_set);
  const double eps2 = epsilon * epsilon;
  const double indicator = diag.p_star < 1.0 ? 1.0 : 0.0;
  bound.estimation_term =
      (3.0 + k_max * k_max / ((1.0 - rho) * diag.p_star * eps2) +
       2.0 * indicator / (rho * rho * diag.p_star)) *
      static_cast<double>(m) * diag.gap_max;

  bound.posterior_term = alpha * (8.0 * k_tilde / (diag.p_star * eps2)) *
                         std::pow(4.0 / eps2 + 1.0, k_tilde) *
                         std::log(k_tilde / eps2) * diag.gap_max;

  bound.total = bound.log_t_term + bound.estimation_term + bound.posterior_term;
  return bound;
}

nlohmann::json regret_bound_to_json(const RegretBound& bound, double lipschitz,
                                    double epsilon, double rho, double alpha,
                                    std::size_t horizon) {
  nlohmann::json out;
  out["log_t_term"] = bound.log_t_term;
  out["estimation_term"] = bound.estimation_term;
  out["posterior_term"] = bound.posterior_term;
  out["total"] = bound.total;
  out["parameters"] = {{"lipschitz", lipschitz},
                       {"epsilon", epsilon},
                       {"rho", rho},
                       {"alpha", alpha},
                       {"horizon", horizon}};
  out["notes"] = {
      {"log_t_term_form",
       "sum_i max over suboptimal S triggering i of 16*B^2*|S~|*log(T) / "
       "((1-rho)*p_i*(gap_S - 2*B*(k_tilde_star^2+2)*epsilon))"},
      {"posterior_term_scaling", "constant in T; alpha supplied by caller"}};
  return out;
}

}  // namespace cmab
