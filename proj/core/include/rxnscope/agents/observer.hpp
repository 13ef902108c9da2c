//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_OBSERVER_HPP_
#define RXNSCOPE_AGENTS_OBSERVER_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/agents/plan.hpp"

namespace rxnscope::agents {

struct Verdict {
  bool pass = true;
  std::vector<std::string> reasons;

  nlohmann::json to_json() const;
};

/// Rule checks on a step's output:
///  - every "smiles" string anywhere in the output parses;
///  - molecular_recognition yields expectations["box_count"] molecules;
///  - R-group steps yield placeholder-free variant molecules;
///  - data_structure records decode and validate.
Verdict observe_step(AgentKind kind, const nlohmann::json &output,
                     const nlohmann::json &expectations
                     = nlohmann::json::object());

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_OBSERVER_HPP_
