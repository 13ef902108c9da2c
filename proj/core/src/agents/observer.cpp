//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/observer.hpp"

#include "rxnscope/error.hpp"
#include "rxnscope/reaction.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope::agents {
namespace {

using nlohmann::json;

void check_smiles(const json &j, const std::string &path, Verdict &v) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string p = path.empty() ? it.key() : path + "." + it.key();
      if (it.key() == "smiles" && it->is_string()) {
        const std::string &text = it->get_ref<const std::string &>();
        try {
          parse_smiles(text);
        } catch (const SmilesParseError &e) {
          v.pass = false;
          v.reasons.push_back(p + ": '" + text + "': " + e.what());
        }
      } else {
        check_smiles(*it, p, v);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      check_smiles(j[i], path + "[" + std::to_string(i) + "]", v);
  }
}

bool has_placeholder(const std::string &smiles) {
  try {
    for (const auto &a: parse_smiles(smiles).atoms)
      if (a.is_placeholder())
        return true;
  } catch (const SmilesParseError &) {
  }
  return false;
}

}  // namespace

json Verdict::to_json() const {
  return { { "pass", pass }, { "reasons", reasons } };
}

Verdict observe_step(AgentKind kind, const json &output,
                     const json &expectations) {
  Verdict v;
  check_smiles(output, "", v);

  switch (kind) {
  case AgentKind::kMolecularRecognition: {
    if (expectations.contains("box_count")) {
      std::size_t boxes = expectations["box_count"].get<std::size_t>();
      std::size_t found = output.value("molecules", json::array()).size();
      if (boxes != found) {
        v.pass = false;
        v.reasons.push_back("detected " + std::to_string(boxes)
                            + " structures but recognized "
                            + std::to_string(found));
      }
    }
    break;
  }
  case AgentKind::kStructureRGroup:
  case AgentKind::kTextRGroup: {
    const json variants = output.value("variants", json::array());
    for (std::size_t i = 0; i < variants.size(); ++i)
      for (const char *side: { "reactants", "products" })
        for (const auto &m: variants[i].value(side, json::array())) {
          std::string s = m.value("smiles", std::string());
          if (has_placeholder(s)) {
            v.pass = false;
            v.reasons.push_back("variants[" + std::to_string(i) + "]."
                                + side + ": unresolved placeholder in " + s);
          }
        }
    break;
  }
  case AgentKind::kDataStructure: {
    try {
      std::vector<ReactionRecord> records;
      const json rs = output.value("records", json::array());
      for (std::size_t i = 0; i < rs.size(); ++i)
        records.push_back(
            decode_record(rs[i], "records[" + std::to_string(i) + "]"));
      for (const auto &issue: validate_records(records)) {
        v.pass = false;
        v.reasons.push_back(issue.path + ": " + issue.message);
      }
    } catch (const DecodeError &e) {
      v.pass = false;
      v.reasons.push_back(e.what());
    }
    break;
  }
  default:
    break;
  }
  return v;
}

}  // namespace rxnscope::agents
