//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_AGENTS_TOOLS_HPP_
#define RXNSCOPE_AGENTS_TOOLS_HPP_

#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/chemops.hpp"
#include "rxnscope/reaction.hpp"

namespace rxnscope::agents {

enum class ToolStatus { kOk, kError };

struct ToolResponse {
  ToolStatus status = ToolStatus::kOk;
  nlohmann::json result;
  std::string error;

  bool ok() const { return status == ToolStatus::kOk; }
  static ToolResponse success(nlohmann::json result);
  static ToolResponse failure(std::string message);

  /// {"status":"ok","result":...} or {"status":"error","error":"..."}.
  nlohmann::json to_json() const;
  static ToolResponse from_json(const nlohmann::json &j);
};

/// One call of a tool as recorded in a trace.
struct ToolInvocation {
  std::string tool;
  nlohmann::json request;
  ToolResponse response;
  int attempt = 1;
};

class Tool {
public:
  virtual ~Tool() = default;
  virtual std::string name() const = 0;
  /// Never throws; failures are reported in the response.
  virtual ToolResponse invoke(const nlohmann::json &request) = 0;
};

class ToolRegistry {
public:
  virtual ~ToolRegistry() = default;

  void add(std::shared_ptr<Tool> tool);
  bool has(const std::string &name) const;
  std::vector<std::string> names() const;

  /// Unknown tools produce an error response.
  virtual ToolResponse invoke(const std::string &name,
                              const nlohmann::json &request);

private:
  std::map<std::string, std::shared_ptr<Tool>> tools_;
};

/// Serves recorded responses tool by tool in their original order.
class ReplayRegistry: public ToolRegistry {
public:
  explicit ReplayRegistry(const std::vector<ToolInvocation> &recorded);
  ToolResponse invoke(const std::string &name,
                      const nlohmann::json &request) override;

private:
  std::mutex mutex_;
  std::map<std::string, std::deque<ToolResponse>> queues_;
};

/// Fails the first `failures` calls, then delegates.
class FlakyTool: public Tool {
public:
  FlakyTool(std::shared_ptr<Tool> inner, int failures)
      : inner_(std::move(inner)), remaining_(failures) { }
  std::string name() const override { return inner_->name(); }
  ToolResponse invoke(const nlohmann::json &request) override;

private:
  std::shared_ptr<Tool> inner_;
  std::mutex mutex_;
  int remaining_;
};

// Rule-based tools ------------------------------------------------------------

/// {"graph": graph JSON} -> {"smiles", "warnings"}: stereo perception,
/// abbreviation expansion, main component, isomeric SMILES. Holds the alias
/// registry of its run.
class Graph2SmilesTool: public Tool {
public:
  explicit Graph2SmilesTool(const AbbreviationTable &table): table_(table) { }
  std::string name() const override { return "graph2smiles"; }
  ToolResponse invoke(const nlohmann::json &request) override;
  const AliasRegistry &aliases() const { return aliases_; }

private:
  const AbbreviationTable &table_;
  std::mutex mutex_;
  AliasRegistry aliases_;
};

/// {"product_template", "reactant_templates": [...], "variant"} ->
/// {"assignment": {label: "*SMILES"}, "reactants": [...], "warnings"}.
class SmilesReconstructorTool: public Tool {
public:
  explicit SmilesReconstructorTool(const AbbreviationTable &table)
      : table_(table) { }
  std::string name() const override { return "smiles_reconstructor"; }
  ToolResponse invoke(const nlohmann::json &request) override;

private:
  const AbbreviationTable &table_;
};

/// {"text"} or {"source": "table"} (reads table.txt of its bundle) ->
/// {"rows": [...]}.
class TableParserTool: public Tool {
public:
  explicit TableParserTool(std::filesystem::path bundle = {})
      : bundle_(std::move(bundle)) { }
  std::string name() const override { return "table_parser"; }
  ToolResponse invoke(const nlohmann::json &request) override;

private:
  std::filesystem::path bundle_;
};

/// {"text"} -> {"conditions": [...]}.
class ConditionInterpreterTool: public Tool {
public:
  explicit ConditionInterpreterTool(const ConditionLexicon &lexicon)
      : lexicon_(lexicon) { }
  std::string name() const override { return "condition_interpreter"; }
  ToolResponse invoke(const nlohmann::json &request) override;

private:
  const ConditionLexicon &lexicon_;
};

/// Stand-in for a neural tool: answers from sidecar JSON in a bundle.
/// Names: rxn_img_parser, image2graph, mol_detector, ocr, ner, rxn_extractor.
class FixtureTool: public Tool {
public:
  FixtureTool(std::string name, std::filesystem::path bundle)
      : name_(std::move(name)), bundle_(std::move(bundle)) { }
  std::string name() const override { return name_; }
  ToolResponse invoke(const nlohmann::json &request) override;

private:
  std::string name_;
  std::filesystem::path bundle_;
};

nlohmann::json table_row_to_json(const RGroupTableRow &row);
nlohmann::json condition_to_json(const ConditionItem &c);
ConditionItem condition_from_json(const nlohmann::json &j);

/// Every tool an extraction over `bundle` needs. Fixture stubs for the neural
/// tools, rule-based implementations for the rest; an optional faults.json
/// ({tool: failure count}) wraps tools in FlakyTool.
std::unique_ptr<ToolRegistry> make_bundle_registry(
    const std::filesystem::path &bundle, const AbbreviationTable &table,
    const ConditionLexicon &lexicon);

}  // namespace rxnscope::agents

#endif  // RXNSCOPE_AGENTS_TOOLS_HPP_
