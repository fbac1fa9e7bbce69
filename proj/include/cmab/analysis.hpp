// Instance diagnostics and the analytic regret bound for the Thompson
// sampling learner. Everything here is exact brute force over the feasible
// set: these numbers feed acceptance checks and must not be sampled.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "cmab/instance.hpp"

namespace cmab {

struct InstanceDiagnostics {
  double opt_value = 0.0;            // max_S r(S, mu)
  std::vector<SuperArm> opt_set;     // all maximizers, enumeration order
  SuperArm s_star;                   // maximizer with the smallest triggering set
  std::size_t k_star = 0;            // |s_star|
  std::size_t k_tilde_star = 0;      // |triggering_set(s_star)|
  double gap_max = 0.0;              // max_S (opt_value - r(S, mu))
  // Smallest gap among suboptimal super arms that can trigger the arm;
  // nullopt when no suboptimal super arm can (the "infinite gap" case).
  std::vector<std::optional<double>> gap_per_arm;
  // Smallest positive triggering probability of the arm over all super arms
  // whose triggering set contains it; 1.0 for arms never triggerable.
  std::vector<double> p_per_arm;
  double p_star = 1.0;               // min over arms of p_per_arm
  std::size_t max_triggering_set = 0;  // max_S |triggering_set(S)|
  std::size_t feasible_count = 0;
};

InstanceDiagnostics diagnose(const ProblemInstance& instance,
                             std::size_t cap = kDefaultEnumerationCap);

nlohmann::json diagnostics_to_json(const InstanceDiagnostics& diag);

// Rounds a suboptimal super arm must be sampled before its posterior draws
// concentrate:  2 log T / (gap/(2B|S~|) - (k*~^2+2) eps / |S~|)^2.
// Requires 0 < eps <= 1/sqrt(e) and gap > 2B(k*~^2+2) eps.
double sampling_threshold(double gap, std::size_t triggering_set_size,
                          std::size_t k_tilde_star, double lipschitz,
                          double epsilon, std::size_t horizon);
double sampling_threshold(const ProblemInstance& instance, const SuperArm& s,
                          const InstanceDiagnostics& diag, double lipschitz,
                          double epsilon, std::size_t horizon);

// Triggering-adjusted threshold: sampling_threshold / ((1-rho) p_i).
double trial_threshold(double sampling_threshold_value,
                       double min_triggering_prob, double rho);
// Requires arm to lie in the triggering set of `s`.
double trial_threshold(const ProblemInstance& instance, const SuperArm& s,
                       ArmId arm, const InstanceDiagnostics& diag,
                       double lipschitz, double epsilon, std::size_t horizon,
                       double rho);
// Max of trial_threshold over suboptimal super arms that can trigger `arm`;
// nullopt if there are none.
std::optional<double> max_trial_threshold(
    const ProblemInstance& instance, ArmId arm, const InstanceDiagnostics& diag,
    double lipschitz, double epsilon, std::size_t horizon, double rho,
    std::size_t cap = kDefaultEnumerationCap);

// Distribution-free upper bound on the cumulative pseudo-regret of the
// Thompson sampling learner by round T, split into its three summands:
//  - log_t_term: sum over arms of the maximized per-arm term
//      16 B^2 |S~| log T / ((1-rho) p_i (gap_S - 2B(k*~^2+2) eps)),
//    the only summand that grows with T;
//  - estimation_term: (3 + K~^2/((1-rho) p* eps^2)
//      + 2*[p* < 1]/(rho^2 p*)) * m * gap_max;
//  - posterior_term: alpha * (8 k*~/(p* eps^2)) * (4/eps^2 + 1)^{k*~}
//      * log(k*~/eps^2) * gap_max, with alpha a caller-supplied
//      problem-independent constant (default 1).
struct RegretBound {
  double log_t_term = 0.0;
  double estimation_term = 0.0;
  double posterior_term = 0.0;
  double total = 0.0;
};

RegretBound cts_regret_bound(const ProblemInstance& instance,
                             const InstanceDiagnostics& diag, double lipschitz,
                             double epsilon, double rho, double alpha,
                             std::size_t horizon,
                             std::size_t cap = kDefaultEnumerationCap);

nlohmann::json regret_bound_to_json(const RegretBound& bound, double lipschitz,
                                    double epsilon, double rho, double alpha,
                                    std::size_t horizon);

}  // namespace cmab
