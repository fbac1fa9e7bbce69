// Monte Carlo experiment runner. Replication k runs on its own stream
// derive_stream_seed(master_seed, k), so replications are order-independent
// and embarrassingly parallel; aggregation reduces in replication-index
// order, which makes results independent of the parallelism degree.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmab/instance.hpp"

namespace cmab {

struct ExperimentConfig {
  nlohmann::json instance;    // instance spec (see instance_io.hpp)
  std::string learner;        // "cts" | "cucb"
  std::size_t horizon = 0;    // T, rounds per replication
  std::size_t n_runs = 0;
  std::uint64_t master_seed = 0;
  std::size_t record_every = 1;
  std::size_t parallelism = 0;  // 0: one worker per hardware thread
};

// JSON keys: instance, learner, T, n_runs, master_seed, record_every,
// parallelism (the last three optional).
ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Cumulative pseudo-regret at each recorded round of one replication.
struct RegretTrajectory {
  std::vector<double> cum_regret;
  std::uint64_t seed = 0;  // the replication's derived stream seed

  bool operator==(const RegretTrajectory&) const = default;
};

struct ExperimentAggregate {
  std::vector<std::size_t> rounds;       // recorded round numbers
  std::vector<double> mean_cum_regret;   // per recorded round
  std::vector<double> std_cum_regret;    // sample std dev; 0 when n_runs == 1
  std::size_t n_runs = 0;
  nlohmann::json metadata;

  bool operator==(const ExperimentAggregate&) const = default;
};

// Rounds at which trajectories are recorded: every multiple of record_every,
// plus the final round.
std::vector<std::size_t> recorded_rounds(std::size_t horizon,
                                         std::size_t record_every);

RegretTrajectory run_replication(const ExperimentConfig& config,
                                 std::size_t replication_index);

ExperimentAggregate run_experiment(const ExperimentConfig& config);

// CSV with header round,mean_cum_regret,std_cum_regret plus a metadata
// sidecar at <csv_path>.meta.json. Doubles are written with enough digits to
// round-trip bit-exactly.
void write_results(const ExperimentAggregate& aggregate,
                   const std::string& csv_path);
ExperimentAggregate read_results(const std::string& csv_path);

}  // namespace cmab
