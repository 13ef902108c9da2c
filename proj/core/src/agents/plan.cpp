//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/plan.hpp"

#include <algorithm>
#include <map>

#include "rxnscope/error.hpp"

namespace rxnscope::agents {
namespace {

constexpr AgentKind kAllKinds[] = {
  AgentKind::kPlanner,
  AgentKind::kPlanObserver,
  AgentKind::kActionObserver,
  AgentKind::kReactionTemplateParsing,
  AgentKind::kMolecularRecognition,
  AgentKind::kStructureRGroup,
  AgentKind::kTextRGroup,
  AgentKind::kConditionInterpretation,
  AgentKind::kTextExtraction,
  AgentKind::kDataStructure,
};

constexpr Modality kAllModalities[] = {
  Modality::kReactionTemplateImage, Modality::kStructureTable,
  Modality::kTextTable,             Modality::kTextDescription,
  Modality::kMoleculeImageOnly,     Modality::kPlainTextOnly,
};

bool contains(const std::vector<std::string> &v, const std::string &s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::string_view to_string(AgentKind kind) {
  switch (kind) {
  case AgentKind::kPlanner: return "planner";
  case AgentKind::kPlanObserver: return "plan_observer";
  case AgentKind::kActionObserver: return "action_observer";
  case AgentKind::kReactionTemplateParsing: return "reaction_template_parsing";
  case AgentKind::kMolecularRecognition: return "molecular_recognition";
  case AgentKind::kStructureRGroup: return "structure_rgroup";
  case AgentKind::kTextRGroup: return "text_rgroup";
  case AgentKind::kConditionInterpretation: return "condition_interpretation";
  case AgentKind::kTextExtraction: return "text_extraction";
  case AgentKind::kDataStructure: return "data_structure";
  }
  return "planner";
}

std::optional<AgentKind> agent_kind_from_string(std::string_view s) {
  for (AgentKind k: kAllKinds)
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

std::string_view to_string(Modality m) {
  switch (m) {
  case Modality::kReactionTemplateImage: return "reaction_template_image";
  case Modality::kStructureTable: return "structure_table";
  case Modality::kTextTable: return "text_table";
  case Modality::kTextDescription: return "text_description";
  case Modality::kMoleculeImageOnly: return "molecule_image_only";
  case Modality::kPlainTextOnly: return "plain_text_only";
  }
  return "plain_text_only";
}

std::optional<Modality> modality_from_string(std::string_view s) {
  for (Modality m: kAllModalities)
    if (to_string(m) == s)
      return m;
  return std::nullopt;
}

std::string_view bundle_key(Modality m) {
  switch (m) {
  case Modality::kReactionTemplateImage: return "template_image";
  case Modality::kStructureTable: return "structure_table";
  case Modality::kTextTable: return "text_table";
  case Modality::kTextDescription: return "text_description";
  case Modality::kMoleculeImageOnly: return "molecule_image";
  case Modality::kPlainTextOnly: return "plain_text";
  }
  return "plain_text";
}

std::vector<std::string> InputDescriptor::problems() const {
  std::vector<std::string> out;
  if (modalities.empty())
    out.push_back("no modalities");
  if (has(Modality::kMoleculeImageOnly) && modalities.size() > 1)
    out.push_back("molecule_image_only excludes every other modality");
  if (has(Modality::kPlainTextOnly) && modalities.size() > 1)
    out.push_back("plain_text_only excludes every other modality");
  if (has(Modality::kStructureTable) && has(Modality::kTextTable))
    out.push_back("structure_table and text_table are mutually exclusive");
  return out;
}

InputDescriptor InputDescriptor::from_json(const nlohmann::json &j,
                                           std::filesystem::path bundle_path) {
  InputDescriptor d;
  d.bundle_path = std::move(bundle_path);
  if (!j.is_object() || !j.contains("modalities")
      || !j["modalities"].is_array())
    throw DecodeError("modalities", "descriptor needs a modalities array");
  const auto &mods = j["modalities"];
  for (std::size_t i = 0; i < mods.size(); ++i) {
    std::string path = "modalities[" + std::to_string(i) + "]";
    if (!mods[i].is_string())
      throw DecodeError(path, "expected a string");
    auto m = modality_from_string(mods[i].get<std::string>());
    if (!m)
      throw DecodeError(path, "unknown modality '"
                                  + mods[i].get<std::string>() + "'");
    d.modalities.insert(*m);
  }
  return d;
}

nlohmann::ordered_json InputDescriptor::to_json() const {
  nlohmann::ordered_json j;
  j["modalities"] = nlohmann::ordered_json::array();
  for (Modality m: modalities)
    j["modalities"].push_back(to_string(m));
  return j;
}

std::vector<AgentKind> Plan::kinds() const {
  std::vector<AgentKind> out;
  for (const PlanStep &s: steps)
    out.push_back(s.kind);
  return out;
}

nlohmann::ordered_json Plan::to_json() const {
  nlohmann::ordered_json j;
  j["revision"] = revision;
  j["steps"] = nlohmann::ordered_json::array();
  for (const PlanStep &s: steps)
    j["steps"].push_back({ { "agent", to_string(s.kind) },
                           { "inputs", s.inputs },
                           { "outputs", s.outputs } });
  return j;
}

PlanStep make_step(AgentKind kind, const InputDescriptor &d,
                   const std::vector<PlanStep> &earlier) {
  PlanStep s { kind, {}, {} };
  switch (kind) {
  case AgentKind::kReactionTemplateParsing:
    s.inputs = { "template_image" };
    s.outputs = { "template" };
    break;
  case AgentKind::kMolecularRecognition:
    s.inputs = { d.has(Modality::kMoleculeImageOnly) ? "molecule_image"
                                                     : "structure_table" };
    s.outputs = { "molecules" };
    break;
  case AgentKind::kStructureRGroup:
    s.inputs = { "template", "molecules" };
    s.outputs = { "assignments", "variants" };
    break;
  case AgentKind::kTextRGroup:
    s.inputs = { "template", "text_table" };
    s.outputs = { "assignments", "variants" };
    break;
  case AgentKind::kConditionInterpretation:
    s.inputs = { "template_image" };
    s.outputs = { "conditions" };
    break;
  case AgentKind::kTextExtraction:
    s.inputs = { d.has(Modality::kPlainTextOnly) ? "plain_text"
                                                 : "text_description" };
    s.outputs = { "text_annotations", "text_reactions" };
    break;
  case AgentKind::kDataStructure:
    for (const PlanStep &e: earlier)
      for (const std::string &o: e.outputs)
        if (!contains(s.inputs, o))
          s.inputs.push_back(o);
    s.outputs = { "records" };
    break;
  case AgentKind::kPlanner:
  case AgentKind::kPlanObserver:
  case AgentKind::kActionObserver:
    break;
  }
  return s;
}

Plan build_plan(const std::vector<AgentKind> &kinds, const InputDescriptor &d,
                int revision) {
  Plan p;
  p.revision = revision;
  for (AgentKind k: kinds)
    p.steps.push_back(make_step(k, d, p.steps));
  return p;
}

std::optional<std::vector<AgentKind>> canonical_plan(
    const std::set<Modality> &m) {
  using K = AgentKind;
  using M = Modality;
  static const std::map<std::set<Modality>, std::vector<AgentKind>> kTable {
    { { M::kReactionTemplateImage, M::kStructureTable, M::kTextDescription },
      { K::kReactionTemplateParsing, K::kMolecularRecognition,
        K::kStructureRGroup, K::kConditionInterpretation, K::kTextExtraction,
        K::kDataStructure } },
    { { M::kReactionTemplateImage, M::kStructureTable },
      { K::kReactionTemplateParsing, K::kMolecularRecognition,
        K::kStructureRGroup, K::kConditionInterpretation,
        K::kDataStructure } },
    { { M::kReactionTemplateImage, M::kTextTable, M::kTextDescription },
      { K::kReactionTemplateParsing, K::kTextRGroup,
        K::kConditionInterpretation, K::kTextExtraction,
        K::kDataStructure } },
    { { M::kReactionTemplateImage, M::kTextTable },
      { K::kReactionTemplateParsing, K::kTextRGroup,
        K::kConditionInterpretation, K::kDataStructure } },
    { { M::kReactionTemplateImage, M::kTextDescription },
      { K::kReactionTemplateParsing, K::kConditionInterpretation,
        K::kTextExtraction, K::kDataStructure } },
    { { M::kReactionTemplateImage },
      { K::kReactionTemplateParsing, K::kConditionInterpretation,
        K::kDataStructure } },
    { { M::kMoleculeImageOnly },
      { K::kMolecularRecognition, K::kDataStructure } },
    { { M::kPlainTextOnly }, { K::kTextExtraction, K::kDataStructure } },
  };
  auto it = kTable.find(m);
  if (it == kTable.end())
    return std::nullopt;
  return it->second;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
  case IssueKind::kOmission: return "omission";
  case IssueKind::kRedundancy: return "redundancy";
  case IssueKind::kInconsistency: return "inconsistency";
  }
  return "omission";
}

std::vector<PlanIssue> review_plan(const Plan &p, const InputDescriptor &d) {
  std::vector<PlanIssue> issues;
  if (p.steps.empty() || p.steps.back().kind != AgentKind::kDataStructure)
    issues.push_back({ IssueKind::kOmission, std::nullopt,
                       "plan does not end with data_structure" });

  for (Modality m: d.modalities) {
    std::string key(bundle_key(m));
    bool consumed = std::any_of(p.steps.begin(), p.steps.end(),
                                [&](const PlanStep &s) {
                                  return contains(s.inputs, key);
                                });
    if (!consumed)
      issues.push_back({ IssueKind::kOmission, std::nullopt,
                         "modality " + std::string(to_string(m))
                             + " has no consuming step" });
  }

  std::map<AgentKind, int> first_seen;
  bool structure = false;
  bool text = false;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    AgentKind k = p.steps[i].kind;
    structure |= k == AgentKind::kStructureRGroup;
    text |= k == AgentKind::kTextRGroup;
    auto [it, fresh] = first_seen.emplace(k, static_cast<int>(i));
    if (!fresh)
      issues.push_back({ IssueKind::kRedundancy, static_cast<int>(i),
                         std::string(to_string(k)) + " repeats step "
                             + std::to_string(it->second) });
    if (k == AgentKind::kPlanner || k == AgentKind::kPlanObserver
        || k == AgentKind::kActionObserver)
      issues.push_back({ IssueKind::kInconsistency, static_cast<int>(i),
                         std::string(to_string(k))
                             + " is not an executable step" });
  }
  if (structure && text)
    issues.push_back({ IssueKind::kRedundancy, std::nullopt,
                       "both structure_rgroup and text_rgroup are planned" });

  std::set<std::string> available;
  for (Modality m: d.modalities)
    available.insert(std::string(bundle_key(m)));
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    for (const std::string &in: p.steps[i].inputs)
      if (!available.count(in))
        issues.push_back({ IssueKind::kInconsistency, static_cast<int>(i),
                           std::string(to_string(p.steps[i].kind))
                               + " consumes '" + in
                               + "', which nothing before it produces" });
    for (const std::string &out: p.steps[i].outputs)
      available.insert(out);
  }
  return issues;
}

}  // namespace rxnscope::agents
