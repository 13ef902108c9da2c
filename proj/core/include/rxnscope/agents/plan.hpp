//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_PLAN_HPP_
#define RXNSCOPE_AGENTS_PLAN_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rxnscope::agents {

enum class AgentKind {
  kPlanner,
  kPlanObserver,
  kActionObserver,
  kReactionTemplateParsing,
  kMolecularRecognition,
  kStructureRGroup,
  kTextRGroup,
  kConditionInterpretation,
  kTextExtraction,
  kDataStructure,
};

std::string_view to_string(AgentKind kind);
std::optional<AgentKind> agent_kind_from_string(std::string_view s);

enum class Modality {
  kReactionTemplateImage,
  kStructureTable,
  kTextTable,
  kTextDescription,
  kMoleculeImageOnly,
  kPlainTextOnly,
};

std::string_view to_string(Modality m);
std::optional<Modality> modality_from_string(std::string_view s);

/// Data key under which the bundle provides a modality ("template_image",
/// "structure_table", ...).
std::string_view bundle_key(Modality m);

struct InputDescriptor {
  std::set<Modality> modalities;
  std::filesystem::path bundle_path;

  /// Empty when consistent; otherwise one message per problem.
  std::vector<std::string> problems() const;
  bool has(Modality m) const { return modalities.count(m) > 0; }

  static InputDescriptor from_json(const nlohmann::json &j,
                                   std::filesystem::path bundle_path = {});
  nlohmann::ordered_json to_json() const;
};

struct PlanStep {
  AgentKind kind;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  bool operator==(const PlanStep &) const = default;
};

struct Plan {
  std::vector<PlanStep> steps;
  int revision = 0;

  std::vector<AgentKind> kinds() const;
  nlohmann::ordered_json to_json() const;
};

/// Declared inputs and outputs of a step kind for a descriptor. data_structure
/// consumes everything produced before it, given as `earlier`.
PlanStep make_step(AgentKind kind, const InputDescriptor &d,
                   const std::vector<PlanStep> &earlier = {});

/// Plan from an ordered list of worker kinds.
Plan build_plan(const std::vector<AgentKind> &kinds, const InputDescriptor &d,
                int revision = 0);

/// The fixed modality-set -> agent-sequence table; nullopt for a set it does
/// not cover.
std::optional<std::vector<AgentKind>> canonical_plan(
    const std::set<Modality> &modalities);

enum class IssueKind { kOmission, kRedundancy, kInconsistency };

std::string_view to_string(IssueKind kind);

struct PlanIssue {
  IssueKind kind;
  std::optional<int> step;
  std::string message;
};

/// Empty list means approved.
std::vector<PlanIssue> review_plan(const Plan &p, const InputDescriptor &d);

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_PLAN_HPP_
