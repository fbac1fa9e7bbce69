#include "cmab/reproduce.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cmab/rng.hpp"

namespace cmab {

namespace {

// Stream tags keep preset sub-experiments on disjoint seed streams.
constexpr std::uint64_t kCellStreamBase = 0x100000000ULL;
constexpr std::uint64_t kInstanceStream = 0x696e7374ULL;  // "inst"

std::string format_delta(double delta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", delta);
  return buf;
}

CellSummary run_cell(const std::string& name, ExperimentConfig config,
                     const ReproduceOptions& options,
                     std::uint64_t cell_stream) {
  if (options.runs_override) config.n_runs = *options.runs_override;
  if (options.horizon_override) config.horizon = *options.horizon_override;
  config.parallelism = options.parallelism;
  config.master_seed = derive_stream_seed(options.seed, cell_stream);

  if (!options.quiet) {
    std::printf("%s: learner=%s T=%zu runs=%zu seed=%llu\n", name.c_str(),
                config.learner.c_str(), config.horizon, config.n_runs,
                static_cast<unsigned long long>(config.master_seed));
    std::fflush(stdout);
  }

  CellSummary cell;
  cell.name = name;
  cell.learner = config.learner;
  cell.aggregate = run_experiment(config);
  cell.mean_final_regret = cell.aggregate.mean_cum_regret.back();
  cell.std_final_regret = cell.aggregate.std_cum_regret.back();
  cell.csv_path =
      (std::filesystem::path(options.out_dir) / (name + ".csv")).string();
  write_results(cell.aggregate, cell.csv_path);
  return cell;
}

}  // namespace

const std::vector<Table1Cell>& table1_cells() {
  static const std::vector<Table1Cell> cells = {
      {16, 2, 0.15},  {16, 4, 0.15},  {16, 8, 0.15},
      {32, 2, 0.15},  {32, 4, 0.15},  {32, 8, 0.15},
      {16, 2, 0.075}, {16, 4, 0.075}, {16, 8, 0.075},
  };
  return cells;
}

std::vector<CellSummary> reproduce_table1(const ReproduceOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<CellSummary> cells;
  std::uint64_t stream = kCellStreamBase;
  for (const Table1Cell& cell : table1_cells()) {
    for (const char* learner : {"cts", "cucb"}) {
      ExperimentConfig config;
      config.instance = {{"type", "blb"},
                         {"R", cell.pages},
                         {"K", cell.slate},
                         {"p", 0.2},
                         {"delta", cell.delta}};
      config.learner = learner;
      config.horizon = 100000;
      config.n_runs = 20;
      config.record_every = 100;
      const std::string name = "blb_R" + std::to_string(cell.pages) + "_K" +
                               std::to_string(cell.slate) + "_d" +
                               format_delta(cell.delta) + "_" + learner;
      cells.push_back(run_cell(name, std::move(config), options, stream++));
    }
  }

  const std::string summary_path =
      (std::filesystem::path(options.out_dir) / "summary.csv").string();
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) throw IoError("cannot open for writing: " + summary_path);
  summary << "R,K,delta,learner,mean_final_regret,std_final_regret\n";
  char line[160];
  for (std::size_t c = 0; c < table1_cells().size(); ++c) {
    const Table1Cell& cell = table1_cells()[c];
    for (std::size_t l = 0; l < 2; ++l) {
      const CellSummary& s = cells[c * 2 + l];
      std::snprintf(line, sizeof(line), "%zu,%zu,%s,%s,%.17g,%.17g\n",
                    cell.pages, cell.slate, format_delta(cell.delta).c_str(),
                    s.learner.c_str(), s.mean_final_regret,
                    s.std_final_regret);
      summary << line;
    }
  }
  return cells;
}

std::vector<CellSummary> reproduce_fig1(const ReproduceOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  const std::uint64_t instance_seed =
      derive_stream_seed(options.seed, kInstanceStream);
  std::vector<CellSummary> cells;
  std::uint64_t stream = kCellStreamBase + 100;
  for (const char* learner : {"cts", "cucb"}) {
    ExperimentConfig config;
    config.instance = {{"type", "uniform_random"},
                       {"L", 20},
                       {"R", 100},
                       {"K", 5},
                       {"seed", instance_seed}};
    config.learner = learner;
    config.horizon = 1600;
    config.n_runs = 100;
    config.record_every = 1;
    cells.push_back(run_cell(std::string("fig1_") + learner,
                             std::move(config), options, stream++));
  }
  return cells;
}

std::vector<CellSummary> reproduce_fig2_scaled(const ReproduceOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  constexpr std::size_t kPages = 1000;
  constexpr std::size_t kFlawedPage = 500;
  std::vector<double> attraction(kPages, 1.0);
  attraction[kFlawedPage] = 1.0 / 3.0;

  std::vector<CellSummary> cells;
  std::uint64_t stream = kCellStreamBase + 200;
  for (const char* learner : {"cts", "cucb"}) {
    ExperimentConfig config;
    config.instance = {{"type", "cascading"},
                       {"mode", "conjunctive"},
                       {"L", 1},
                       {"R", kPages},
                       {"K", kPages - 1},
                       {"attraction", nlohmann::json::array({attraction})}};
    config.learner = learner;
    config.horizon = 160;
    config.n_runs = 100;
    config.record_every = 1;
    cells.push_back(run_cell(std::string("fig2_scaled_") + learner,
                             std::move(config), options, stream++));
  }
  return cells;
}

std::vector<CellSummary> reproduce(const std::string& target,
                                   const ReproduceOptions& options) {
  if (target == "table1") return reproduce_table1(options);
  if (target == "fig1") return reproduce_fig1(options);
  if (target == "fig2-scaled") return reproduce_fig2_scaled(options);
  throw InvalidParameter("unknown reproduce target \"" + target +
                         "\" (expected table1, fig1 or fig2-scaled)");
}

}  // namespace cmab
