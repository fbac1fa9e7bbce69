// Instance specifications as JSON documents. Supported forms:
//
//   {"type":"cascading","mode":"disjunctive"|"conjunctive",
//    "L":…,"R":…,"K":…,"attraction":[[…],…]}
//   {"type":"blb","R":…,"K":…,"p":…,"delta":…}
//   {"type":"uniform_random","L":…,"R":…,"K":…,"seed":…}
//   {"type":"tabular","m":…,"means":[…],"feasible":[[…],…],
//    "trigger_probs":[[…],…],"reward_weights":[…]}
#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "cmab/instance.hpp"

namespace cmab {

std::unique_ptr<ProblemInstance> load_instance(const nlohmann::json& spec);

// Parses the file at `path`; malformed JSON raises IoError carrying the
// parser's line/column message.
std::unique_ptr<ProblemInstance> load_instance_file(const std::string& path);

}  // namespace cmab
