#include "cmab/instance_io.hpp"

#include <fstream>
#include <utility>
#include <vector>

#include "cmab/cascading.hpp"
#include "cmab/rng.hpp"
#include "cmab/tabular.hpp"

namespace cmab {

namespace {

using nlohmann::json;

const json& require(const json& spec, const char* key) {
  auto it = spec.find(key);
  if (it == spec.end()) {
    throw InvalidParameter("instance spec: missing field \"" +
                           std::string(key) + "\"");
  }
  return *it;
}

std::unique_ptr<ProblemInstance> load_cascading(const json& spec) {
  const std::string mode_name = require(spec, "mode").get<std::string>();
  CascadeMode mode;
  if (mode_name == "disjunctive") {
    mode = CascadeMode::kDisjunctive;
  } else if (mode_name == "conjunctive") {
    mode = CascadeMode::kConjunctive;
  } else {
    throw InvalidParameter("instance spec: unknown cascade mode \"" +
                           mode_name + "\"");
  }
  const auto users = require(spec, "L").get<std::size_t>();
  const auto pages = require(spec, "R").get<std::size_t>();
  const auto slate = require(spec, "K").get<std::size_t>();
  const json& rows = require(spec, "attraction");
  if (!rows.is_array() || rows.size() != users) {
    throw InvalidParameter("instance spec: attraction must have L rows");
  }
  std::vector<double> flat;
  flat.reserve(users * pages);
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != pages) {
      throw InvalidParameter("instance spec: attraction rows must have length R");
    }
    for (const json& v : row) flat.push_back(v.get<double>());
  }
  return std::make_unique<CascadingInstance>(users, pages, slate,
                                             std::move(flat), mode);
}

std::unique_ptr<ProblemInstance> load_blb(const json& spec) {
  return std::make_unique<CascadingInstance>(
      make_blb(require(spec, "R").get<std::size_t>(),
               require(spec, "K").get<std::size_t>(),
               require(spec, "p").get<double>(),
               require(spec, "delta").get<double>()));
}

std::unique_ptr<ProblemInstance> load_uniform_random(const json& spec) {
  Rng rng(require(spec, "seed").get<std::uint64_t>());
  return std::make_unique<CascadingInstance>(
      make_uniform_random(require(spec, "L").get<std::size_t>(),
                          require(spec, "R").get<std::size_t>(),
                          require(spec, "K").get<std::size_t>(), rng));
}

std::unique_ptr<ProblemInstance> load_tabular(const json& spec) {
  TabularInstance::Config cfg;
  cfg.num_arms = require(spec, "m").get<std::size_t>();
  cfg.means = require(spec, "means").get<std::vector<double>>();
  for (const json& arm_list : require(spec, "feasible")) {
    cfg.feasible.push_back(SuperArm{arm_list.get<std::vector<ArmId>>()});
  }
  cfg.trigger_probs =
      require(spec, "trigger_probs").get<std::vector<std::vector<double>>>();
  cfg.reward_weights =
      require(spec, "reward_weights").get<std::vector<double>>();
  return std::make_unique<TabularInstance>(std::move(cfg));
}

}  // namespace

std::unique_ptr<ProblemInstance> load_instance(const json& spec) {
  try {
    const std::string type = require(spec, "type").get<std::string>();
    if (type == "cascading") return load_cascading(spec);
    if (type == "blb") return load_blb(spec);
    if (type == "uniform_random") return load_uniform_random(spec);
    if (type == "tabular") return load_tabular(spec);
    throw InvalidParameter("instance spec: unknown type \"" + type + "\"");
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("instance spec: ") + e.what());
  }
}

std::unique_ptr<ProblemInstance> load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open instance file: " + path);
  }
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return load_instance(spec);
}

}  // namespace cmab
