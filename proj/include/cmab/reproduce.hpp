// Built-in experiment presets, shared by the CLI and the acceptance suite.
//
//   table1      - the B_LB(R,K,0.2,delta) grid: R in {16,32}, K in {2,4,8},
//                 delta in {0.15, 0.075}, both learners, T = 100000, 20 runs.
//   fig1        - disjunctive cascading, L=20 R=100 K=5, i.i.d. uniform
//                 attractions, both learners, T = 1600, 100 runs.
//   fig2-scaled - conjunctive needle-in-a-haystack at desk scale: L=1,
//                 R=1000, K=999, one page at attraction 1/3 and the rest at
//                 1, both learners, T = 160, 100 runs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmab/harness.hpp"

namespace cmab {

struct ReproduceOptions {
  std::string out_dir;
  std::uint64_t seed = 0;
  std::optional<std::size_t> runs_override;
  std::optional<std::size_t> horizon_override;
  std::size_t parallelism = 0;
  bool quiet = false;  // suppress the per-cell parameter lines on stdout
};

struct CellSummary {
  std::string name;      // e.g. "blb_R16_K2_d0.15_cts"
  std::string csv_path;
  std::string learner;
  double mean_final_regret = 0.0;
  double std_final_regret = 0.0;
  ExperimentAggregate aggregate;
};

struct Table1Cell {
  std::size_t pages;   // R
  std::size_t slate;   // K
  double delta;
};

// The nine grid cells in their canonical order.
const std::vector<Table1Cell>& table1_cells();

// Each preset writes one CSV (+ metadata sidecar) per cell into out_dir and
// returns the summaries in deterministic order. table1 also writes
// summary.csv with one row per (cell, learner).
std::vector<CellSummary> reproduce_table1(const ReproduceOptions& options);
std::vector<CellSummary> reproduce_fig1(const ReproduceOptions& options);
std::vector<CellSummary> reproduce_fig2_scaled(const ReproduceOptions& options);

// Dispatch by target name: "table1" | "fig1" | "fig2-scaled".
std::vector<CellSummary> reproduce(const std::string& target,
                                   const ReproduceOptions& options);

}  // namespace cmab
