//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/backend.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "rxnscope/error.hpp"

namespace rxnscope::agents {

using nlohmann::json;

json BackendRequest::to_json() const {
  return { { "agent", to_string(agent) },
           { "role_prompt", role_prompt },
           { "digest", digest },
           { "observation", observation } };
}

json BackendReply::to_json() const {
  json j = { { "action", action }, { "corrections", corrections } };
  if (!message.empty())
    j["message"] = message;
  return j;
}

BackendReply BackendReply::from_json(const json &j) {
  if (!j.is_object() || !j.contains("action") || !j["action"].is_string())
    throw DecodeError("action", "backend reply needs a string action");
  BackendReply r;
  r.action = j["action"].get<std::string>();
  static const std::vector<std::string> kActions = { "plan", "accept",
                                                     "correct", "error" };
  if (std::find(kActions.begin(), kActions.end(), r.action) == kActions.end())
    throw DecodeError("action", "unknown action '" + r.action + "'");
  if (j.contains("corrections")) {
    if (!j["corrections"].is_object())
      throw DecodeError("corrections", "expected an object");
    r.corrections = j["corrections"];
  }
  r.message = j.value("message", std::string());
  return r;
}

std::string role_prompt(AgentKind kind) {
  switch (kind) {
  case AgentKind::kPlanner:
    return "Choose the ordered list of extraction agents for the listed input "
           "modalities. Reply {\"action\":\"plan\",\"corrections\":{\"steps\":"
           "[agent names]}}.";
  case AgentKind::kPlanObserver:
    return "Check the plan for omitted, redundant or inconsistent steps.";
  case AgentKind::kActionObserver:
    return "Check the step output for invalid structures and count "
           "mismatches.";
  case AgentKind::kReactionTemplateParsing:
  case AgentKind::kMolecularRecognition:
    return "Repair unrecognized abbreviation tokens and read R-group "
           "definitions of the form 'Label = value'. Reply "
           "{\"action\":\"correct\",\"corrections\":{\"tokens\":{bad:fixed},"
           "\"rgroups\":{label:value}}} or {\"action\":\"accept\"}.";
  case AgentKind::kStructureRGroup:
  case AgentKind::kTextRGroup:
    return "Confirm the R-group assignments of each product variant.";
  case AgentKind::kConditionInterpretation:
    return "Confirm the role of each condition item.";
  case AgentKind::kTextExtraction:
    return "Confirm the entities and reactions found in the text.";
  case AgentKind::kDataStructure:
    return "Confirm the assembled reaction records.";
  }
  return "";
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t { 0 });
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({ row[j] + 1, row[j - 1] + 1,
                          diag + (a[i - 1] == b[j - 1] ? 0 : 1) });
      diag = up;
    }
  }
  return row[b.size()];
}

BackendReply ScriptedBackend::call(const BackendRequest &request) {
  BackendReply reply;
  const json &obs = request.observation;

  if (request.agent == AgentKind::kPlanner) {
    std::set<Modality> mods;
    for (const auto &m: obs.value("modalities", json::array()))
      if (auto parsed = modality_from_string(m.get<std::string>()))
        mods.insert(*parsed);
    auto kinds = canonical_plan(mods);
    if (!kinds) {
      reply.action = "error";
      reply.message = "no plan for this combination of modalities";
      return reply;
    }
    reply.action = "plan";
    reply.corrections["steps"] = json::array();
    for (AgentKind k: *kinds)
      reply.corrections["steps"].push_back(to_string(k));
    return reply;
  }

  json tokens = json::object();
  std::vector<std::string> known = table_.tokens();
  for (const auto &t: obs.value("unknown_tokens", json::array())) {
    std::string bad = t.get<std::string>();
    std::vector<std::string> near;
    for (const auto &k: known)
      if (edit_distance(bad, k) == 1)
        near.push_back(k);
    if (near.size() == 1)
      tokens[bad] = near.front();
  }
  json rgroups = json::object();
  for (const auto &a: obs.value("annotations", json::array()))
    if (auto f = parse_rgroup_formula(a.get<std::string>()))
      rgroups[f->label] = f->value;

  if (!tokens.empty())
    reply.corrections["tokens"] = tokens;
  if (!rgroups.empty())
    reply.corrections["rgroups"] = rgroups;
  reply.action = reply.corrections.empty() ? "accept" : "correct";
  return reply;
}

}  // namespace rxnscope::agents
