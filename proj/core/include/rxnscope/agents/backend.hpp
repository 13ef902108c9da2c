//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_BACKEND_HPP_
#define RXNSCOPE_AGENTS_BACKEND_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rxnscope/agents/plan.hpp"
#include "rxnscope/chemops.hpp"

namespace rxnscope::agents {

struct BackendRequest {
  AgentKind agent = AgentKind::kPlanner;
  std::string role_prompt;
  nlohmann::json digest = nlohmann::json::object();
  nlohmann::json observation = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// action is one of "plan", "accept", "correct" or "error".
///
/// Planner replies carry {"steps": [agent names]}. Worker replies may carry
/// {"tokens": {bad: fixed}} and {"rgroups": {label: value}}.
struct BackendReply {
  std::string action = "accept";
  nlohmann::json corrections = nlohmann::json::object();
  std::string message;

  nlohmann::json to_json() const;
  static BackendReply from_json(const nlohmann::json &j);
};

class ReasoningBackend {
public:
  virtual ~ReasoningBackend() = default;
  virtual std::string name() const = 0;
  virtual BackendReply call(const BackendRequest &request) = 0;
};

/// Instruction text handed to a backend for an agent.
std::string role_prompt(AgentKind kind);

/// Deterministic backend. Plans from the canonical table, repairs unknown
/// abbreviation tokens that sit at edit distance one from exactly one known
/// token, and reads "Label = value" annotations.
class ScriptedBackend: public ReasoningBackend {
public:
  explicit ScriptedBackend(
      const AbbreviationTable &table = AbbreviationTable::defaults())
      : table_(table) { }
  std::string name() const override { return "scripted"; }
  BackendReply call(const BackendRequest &request) override;

private:
  const AbbreviationTable &table_;
};

struct RemoteConfig {
  std::string endpoint;  // base URL, e.g. https://host:443
  std::string path = "/v1/chat/completions";
  std::string token;
  std::string model;
  double temperature = 0.1;
  int timeout_seconds = 120;

  /// Environment (RXNSCOPE_ENDPOINT, RXNSCOPE_TOKEN, RXNSCOPE_MODEL,
  /// RXNSCOPE_TEMPERATURE) over an optional JSON file with the same fields
  /// in lowercase.
  static RemoteConfig load(const std::optional<std::filesystem::path> &file);
};

/// Chat-completions client. The reply content must be a BackendReply JSON.
class RemoteBackend: public ReasoningBackend {
public:
  explicit RemoteBackend(RemoteConfig config);
  std::string name() const override { return "remote"; }
  BackendReply call(const BackendRequest &request) override;

private:
  RemoteConfig config_;
};

/// Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_BACKEND_HPP_
