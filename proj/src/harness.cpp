#include "cmab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "cmab/instance_io.hpp"
#include "cmab/learners.hpp"
#include "cmab/oracles.hpp"

namespace cmab {

namespace {

void validate_config(const ExperimentConfig& config) {
  if (config.horizon < 1) throw InvalidParameter("config: T must be >= 1");
  if (config.n_runs < 1) throw InvalidParameter("config: n_runs must be >= 1");
  if (config.record_every < 1) {
    throw InvalidParameter("config: record_every must be >= 1");
  }
  if (config.learner != "cts" && config.learner != "cucb") {
    throw InvalidParameter("config: learner must be \"cts\" or \"cucb\"");
  }
}

RegretTrajectory run_one(const ProblemInstance& instance, const Oracle& oracle,
                         double opt_value, const ExperimentConfig& config,
                         std::size_t replication_index) {
  RegretTrajectory trajectory;
  trajectory.seed = derive_stream_seed(config.master_seed, replication_index);
  Rng rng(trajectory.seed);
  const auto learner = make_learner(config.learner, instance.num_arms(), oracle);

  trajectory.cum_regret.reserve(
      recorded_rounds(config.horizon, config.record_every).size());
  OutcomeVector outcomes;
  double cum = 0.0;
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    const SuperArm selected = learner->select(rng);
    instance.sample_outcomes(rng, outcomes);
    const TriggerOutcome result = instance.trigger(selected, outcomes, rng);
    learner->update(result.feedback, rng);
    cum += regret_increment(instance, opt_value, selected);
    if (t % config.record_every == 0 || t == config.horizon) {
      trajectory.cum_regret.push_back(cum);
    }
  }
  return trajectory;
}

nlohmann::json learner_constants(const std::string& learner) {
  if (learner == "cucb") {
    return {{"exploration_radius", "sqrt(3*ln(t) / (2*n_i))"},
            {"exploration_numerator", CucbLearner::kExplorationNumerator},
            {"index_clip", {0.0, 1.0}},
            {"untried_index", 1.0}};
  }
  return {{"prior", "Beta(1,1)"}, {"bernoulli_rounding", true}};
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& doc) {
  ExperimentConfig config;
  try {
    config.instance = doc.at("instance");
    config.learner = doc.at("learner").get<std::string>();
    config.horizon = doc.at("T").get<std::size_t>();
    config.n_runs = doc.at("n_runs").get<std::size_t>();
    config.master_seed = doc.value("master_seed", std::uint64_t{0});
    config.record_every = doc.value("record_every", std::size_t{1});
    config.parallelism = doc.value("parallelism", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("experiment config: ") + e.what());
  }
  validate_config(config);
  return config;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  return {{"instance", config.instance},
          {"learner", config.learner},
          {"T", config.horizon},
          {"n_runs", config.n_runs},
          {"master_seed", config.master_seed},
          {"record_every", config.record_every},
          {"parallelism", config.parallelism}};
}

std::vector<std::size_t> recorded_rounds(std::size_t horizon,
                                         std::size_t record_every) {
  std::vector<std::size_t> rounds;
  rounds.reserve(horizon / record_every + 1);
  for (std::size_t t = record_every; t <= horizon; t += record_every) {
    rounds.push_back(t);
  }
  if (rounds.empty() || rounds.back() != horizon) rounds.push_back(horizon);
  return rounds;
}

RegretTrajectory run_replication(const ExperimentConfig& config,
                                 std::size_t replication_index) {
  validate_config(config);
  const auto instance = load_instance(config.instance);
  const Oracle oracle = exact_oracle_for(*instance);
  const double opt_value = oracle(instance->means()).value;
  return run_one(*instance, oracle, opt_value, config, replication_index);
}

ExperimentAggregate run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto instance = load_instance(config.instance);
  const Oracle oracle = exact_oracle_for(*instance);
  const double opt_value = oracle(instance->means()).value;

  std::vector<RegretTrajectory> trajectories(config.n_runs);
  std::size_t workers = config.parallelism;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, config.n_runs);

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::string failure;
  auto work = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= config.n_runs) return;
      try {
        trajectories[k] = run_one(*instance, oracle, opt_value, config, k);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure.empty()) {
          failure = "replication " + std::to_string(k) + " (seed " +
                    std::to_string(
                        derive_stream_seed(config.master_seed, k)) +
                    ") failed: " + e.what();
        }
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (!failure.empty()) throw std::runtime_error(failure);

  const std::vector<std::size_t> rounds =
      recorded_rounds(config.horizon, config.record_every);
  ExperimentAggregate aggregate;
  aggregate.rounds = rounds;
  aggregate.n_runs = config.n_runs;
  aggregate.mean_cum_regret.assign(rounds.size(), 0.0);
  aggregate.std_cum_regret.assign(rounds.size(), 0.0);
  const double n = static_cast<double>(config.n_runs);
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    double sum = 0.0;
    for (const RegretTrajectory& t : trajectories) sum += t.cum_regret[r];
    const double mean = sum / n;
    aggregate.mean_cum_regret[r] = mean;
    if (config.n_runs > 1) {
      double ss = 0.0;
      for (const RegretTrajectory& t : trajectories) {
        const double d = t.cum_regret[r] - mean;
        ss += d * d;
      }
      aggregate.std_cum_regret[r] = std::sqrt(ss / (n - 1.0));
    }
  }

  aggregate.metadata = {
      {"config", config_to_json(config)},
      {"learner_constants", learner_constants(config.learner)},
      {"library_version", std::string(kLibraryVersion)},
      {"optimal_value", opt_value},
      {"regret_convention",
       "pseudo-regret: per-round expected-value gap of the selected super arm"},
      {"rng",
       {{"engine", "splitmix64-v1"},
        {"stream_derivation",
         "mix64(master_seed + (replication_index + 1) * 0x9E3779B97F4A7C15)"},
        {"uniform", "53-bit mantissa in [0,1)"}}}};
  return aggregate;
}

void write_results(const ExperimentAggregate& aggregate,
                   const std::string& csv_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot open for writing: " + csv_path);
  csv << "round,mean_cum_regret,std_cum_regret\n";
  char line[128];
  for (std::size_t r = 0; r < aggregate.rounds.size(); ++r) {
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", aggregate.rounds[r],
                  aggregate.mean_cum_regret[r], aggregate.std_cum_regret[r]);
    csv << line;
  }
  if (!csv) throw IoError("write failed: " + csv_path);
  csv.close();

  const std::string meta_path = csv_path + ".meta.json";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) throw IoError("cannot open for writing: " + meta_path);
  nlohmann::json sidecar = aggregate.metadata;
  sidecar["n_runs"] = aggregate.n_runs;
  meta << sidecar.dump(2) << "\n";
  if (!meta) throw IoError("write failed: " + meta_path);
}

ExperimentAggregate read_results(const std::string& csv_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw IoError("cannot open for reading: " + csv_path);
  std::string header;
  if (!std::getline(csv, header) ||
      header != "round,mean_cum_regret,std_cum_regret") {
    throw IoError("unexpected CSV header in " + csv_path);
  }
  ExperimentAggregate aggregate;
  std::string line;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::size_t round = 0;
    double mean = 0.0, stddev = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%lg,%lg", &round, &mean, &stddev) != 3) {
      throw IoError("malformed CSV row in " + csv_path + ": " + line);
    }
    aggregate.rounds.push_back(round);
    aggregate.mean_cum_regret.push_back(mean);
    aggregate.std_cum_regret.push_back(stddev);
  }

  const std::string meta_path = csv_path + ".meta.json";
  std::ifstream meta(meta_path);
  if (!meta) throw IoError("cannot open for reading: " + meta_path);
  nlohmann::json sidecar;
  try {
    sidecar = nlohmann::json::parse(meta);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(meta_path + ": " + e.what());
  }
  aggregate.n_runs = sidecar.at("n_runs").get<std::size_t>();
  sidecar.erase("n_runs");
  aggregate.metadata = std::move(sidecar);
  return aggregate;
}

}  // namespace cmab
