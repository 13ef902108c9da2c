//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_PIPELINE_HPP_
#define RXNSCOPE_AGENTS_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/agents/backend.hpp"
#include "rxnscope/agents/memory.hpp"
#include "rxnscope/agents/plan.hpp"
#include "rxnscope/agents/tools.hpp"
#include "rxnscope/chemops.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/reaction.hpp"

namespace rxnscope::agents {

/// One entry of an execution trace. event is "plan", "plan_review", "tool",
/// "backend", "verdict", "skipped" or "failed"; step is -1 during planning.
struct TraceEvent {
  int step = -1;
  AgentKind agent = AgentKind::kPlanner;
  std::string event;
  int attempt = 0;
  std::optional<ToolInvocation> invocation;
  nlohmann::json detail;

  nlohmann::json to_json() const;
  static TraceEvent from_json(const nlohmann::json &j);
};

struct Trace {
  std::vector<TraceEvent> events;

  std::vector<ToolInvocation> invocations() const;
  nlohmann::json to_json() const;
  static Trace from_json(const nlohmann::json &j);
};

class ExtractionError: public Error {
public:
  ExtractionError(const std::string &message, Trace trace)
      : Error("extraction_error", message), trace_(std::move(trace)) { }

  const Trace &trace() const noexcept { return trace_; }

private:
  Trace trace_;
};

struct PipelineOptions {
  // Total attempts per step, first try included.
  int retry_budget = 2;
  const AbbreviationTable *table = &AbbreviationTable::defaults();
  const ConditionLexicon *lexicon = &ConditionLexicon::defaults();
};

struct ExtractionResult {
  Plan plan;
  std::vector<MoleculeEntry> template_reactants;
  std::vector<MoleculeEntry> template_products;
  std::vector<MoleculeEntry> molecules;
  std::vector<ReactionRecord> records;
  std::vector<std::string> text_annotations;
  std::vector<std::string> warnings;
  Trace trace;
  nlohmann::json digest;
  // Long-term memory in append order.
  std::vector<ArchiveEntry> archive;

  ReactionDocument document() const;
};

/// Reads descriptor.json from a bundle directory.
InputDescriptor load_bundle(const std::filesystem::path &dir);

/// Asks the backend for a plan and records the exchange in trace. Throws
/// Error when the backend cannot plan.
Plan plan_extraction(const InputDescriptor &d, ReasoningBackend &backend,
                     Trace &trace);

/// Runs every step with observer checks and retries. A step that exhausts
/// its budget is recorded as failed and steps needing its outputs are
/// skipped; failure of the first step throws ExtractionError.
ExtractionResult execute_plan(const Plan &plan, const InputDescriptor &d,
                              ToolRegistry &tools, ReasoningBackend &backend,
                              const PipelineOptions &options = {},
                              Trace trace = {});

/// Planning, plan review (one revision round) and execution.
ExtractionResult run_extraction(const InputDescriptor &d, ToolRegistry &tools,
                                ReasoningBackend &backend,
                                const PipelineOptions &options = {});

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_PIPELINE_HPP_
