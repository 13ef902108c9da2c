//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/tools.hpp"

#include <fstream>
#include <sstream>

#include "rxnscope/error.hpp"
#include "rxnscope/rgroup.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope::agents {
namespace {

using nlohmann::json;

std::optional<std::string> read_text(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<json> read_json(const std::filesystem::path &p) {
  auto text = read_text(p);
  if (!text)
    return std::nullopt;
  return std::optional<json>(std::in_place, json::parse(*text));
}

json required(const std::filesystem::path &p) {
  auto j = read_json(p);
  if (!j)
    throw Error("tool_error", "missing " + p.filename().string());
  return *j;
}

template <class F>
ToolResponse guarded(F &&body) {
  try {
    return ToolResponse::success(body());
  } catch (const std::exception &e) {
    return ToolResponse::failure(e.what());
  }
}

std::string str_field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    throw Error("tool_error", std::string("request needs string '") + key
                                  + "'");
  return j[key].get<std::string>();
}

}  // namespace

ToolResponse ToolResponse::success(json result) {
  ToolResponse r;
  r.result = std::move(result);
  return r;
}

ToolResponse ToolResponse::failure(std::string message) {
  ToolResponse r;
  r.status = ToolStatus::kError;
  r.error = std::move(message);
  return r;
}

json ToolResponse::to_json() const {
  if (ok())
    return { { "status", "ok" }, { "result", result } };
  return { { "status", "error" }, { "error", error } };
}

ToolResponse ToolResponse::from_json(const json &j) {
  if (!j.is_object() || !j.contains("status"))
    throw DecodeError("status", "tool response needs a status");
  if (j["status"] == "ok")
    return success(j.value("result", json()));
  if (j["status"] == "error")
    return failure(j.value("error", std::string()));
  throw DecodeError("status", "unknown tool status");
}

void ToolRegistry::add(std::shared_ptr<Tool> tool) {
  std::string name = tool->name();
  tools_.insert_or_assign(std::move(name), std::move(tool));
}

bool ToolRegistry::has(const std::string &name) const {
  return tools_.count(name) > 0;
}

std::vector<std::string> ToolRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &[name, tool]: tools_)
    out.push_back(name);
  return out;
}

ToolResponse ToolRegistry::invoke(const std::string &name,
                                  const json &request) {
  auto it = tools_.find(name);
  if (it == tools_.end())
    return ToolResponse::failure("unknown tool '" + name + "'");
  return it->second->invoke(request);
}

ReplayRegistry::ReplayRegistry(const std::vector<ToolInvocation> &recorded) {
  for (const auto &inv: recorded)
    queues_[inv.tool].push_back(inv.response);
}

ToolResponse ReplayRegistry::invoke(const std::string &name, const json &) {
  std::lock_guard lock(mutex_);
  auto &q = queues_[name];
  if (q.empty())
    return ToolResponse::failure("no recorded response left for '" + name
                                 + "'");
  ToolResponse r = std::move(q.front());
  q.pop_front();
  return r;
}

ToolResponse FlakyTool::invoke(const json &request) {
  {
    std::lock_guard lock(mutex_);
    if (remaining_ > 0) {
      --remaining_;
      return ToolResponse::failure(inner_->name() + " unavailable");
    }
  }
  return inner_->invoke(request);
}

// Rule-based tools ------------------------------------------------------------

ToolResponse Graph2SmilesTool::invoke(const json &request) {
  return guarded([&] {
    if (!request.contains("graph"))
      throw Error("tool_error", "request needs 'graph'");
    MolecularGraph g = graph_from_json(request["graph"]);
    StereoPerception sp = perceive_stereo(g);
    json warnings = json::array();
    for (const auto &w: sp.warnings)
      warnings.push_back("atom " + std::to_string(w.atom) + ": " + w.message);
    MolecularGraph expanded;
    {
      std::lock_guard lock(mutex_);
      expanded = expand_abbreviations(sp.graph, table_, aliases_);
    }
    Subgraph main = main_component(expanded);
    if (main.graph.atom_count() < expanded.atom_count())
      warnings.push_back("dropped "
                         + std::to_string(expanded.atom_count()
                                          - main.graph.atom_count())
                         + " atoms outside the main component");
    json out = { { "smiles", write_smiles(main.graph) },
                 { "warnings", warnings } };
    if (g.label)
      out["label"] = *g.label;
    return out;
  });
}

ToolResponse SmilesReconstructorTool::invoke(const json &request) {
  return guarded([&] {
    MolecularGraph product = parse_smiles(str_field(request, "product_template"));
    MolecularGraph variant = parse_smiles(str_field(request, "variant"));
    std::vector<MolecularGraph> reactants;
    for (const auto &s: request.at("reactant_templates"))
      reactants.push_back(parse_smiles(s.get<std::string>()));
    ReactionTemplate t = ReactionTemplate::from_graphs(std::move(reactants),
                                                       { product });
    std::vector<std::string> warnings;
    RGroupAssignment a = extract_rgroup_fragments(product, variant, &warnings);
    json assignment = json::object();
    for (const auto &[label, b]: a.bindings)
      assignment[label] = binding_text(b);
    return json { { "assignment", assignment },
                  { "reactants", reconstruct_reactants(t, a, table_) },
                  { "warnings", warnings } };
  });
}

json table_row_to_json(const RGroupTableRow &row) {
  return { { "entry", row.entry },
           { "values", row.values },
           { "metadata", row.metadata } };
}

ToolResponse TableParserTool::invoke(const json &request) {
  return guarded([&] {
    std::string text;
    if (request.contains("text")) {
      text = str_field(request, "text");
    } else {
      auto t = read_text(bundle_ / "table.txt");
      if (!t)
        throw Error("tool_error", "missing table.txt");
      text = *t;
    }
    json rows = json::array();
    for (const auto &row: parse_rgroup_table(text))
      rows.push_back(table_row_to_json(row));
    return json { { "rows", rows } };
  });
}

json condition_to_json(const ConditionItem &c) {
  json j = { { "role", to_string(c.role) }, { "text", c.text } };
  if (c.smiles)
    j["smiles"] = *c.smiles;
  if (c.label)
    j["label"] = *c.label;
  return j;
}

ConditionItem condition_from_json(const json &j) {
  ConditionItem c;
  auto role = condition_role_from_string(j.at("role").get<std::string>());
  if (!role)
    throw DecodeError("role", "unknown condition role");
  c.role = *role;
  c.text = j.at("text").get<std::string>();
  if (j.contains("smiles"))
    c.smiles = j["smiles"].get<std::string>();
  if (j.contains("label"))
    c.label = j["label"].get<std::string>();
  return c;
}

ToolResponse ConditionInterpreterTool::invoke(const json &request) {
  return guarded([&] {
    json items = json::array();
    for (const auto &c: classify_condition(str_field(request, "text"), lexicon_))
      items.push_back(condition_to_json(c));
    return json { { "conditions", items } };
  });
}

// Fixture stubs -----------------------------------------------------------------

ToolResponse FixtureTool::invoke(const json &request) {
  return guarded([&]() -> json {
    if (name_ == "rxn_img_parser") {
      json t = required(bundle_ / "template.json");
      json out = { { "annotations", t.value("annotations", json::array()) } };
      for (const char *side: { "reactants", "products" }) {
        out[side] = json::array();
        const json &graphs = t.at(side);
        for (std::size_t i = 0; i < graphs.size(); ++i) {
          json entry = { { "index", i } };
          if (graphs[i].contains("label"))
            entry["label"] = graphs[i]["label"];
          out[side].push_back(entry);
        }
      }
      return out;
    }
    if (name_ == "image2graph") {
      std::string source = str_field(request, "source");
      std::size_t index = request.at("index").get<std::size_t>();
      json graphs;
      if (source == "template")
        graphs = required(bundle_ / "template.json").at(
            str_field(request, "side"));
      else if (source == "molecules")
        graphs = required(bundle_ / "molecules.json");
      else
        throw Error("tool_error", "unknown source '" + source + "'");
      if (index >= graphs.size())
        throw Error("tool_error", "no structure at index "
                                      + std::to_string(index));
      return graphs[index];
    }
    if (name_ == "mol_detector")
      return required(bundle_ / "boxes.json");
    if (name_ == "ocr") {
      std::string target = str_field(request, "target");
      if (target == "conditions") {
        json o = read_json(bundle_ / "ocr.json").value_or(json::object());
        return { { "regions", o.value("conditions", json::array()) } };
      }
      const char *file = target == "table" ? "table.txt" : "text.txt";
      if (target != "table" && target != "text")
        throw Error("tool_error", "unknown ocr target '" + target + "'");
      return { { "text", read_text(bundle_ / file).value_or("") } };
    }
    if (name_ == "ner") {
      json o = read_json(bundle_ / "ner.json").value_or(json::object());
      return { { "entities", o.value("entities", json::array()) } };
    }
    if (name_ == "rxn_extractor") {
      json o = read_json(bundle_ / "rxn_text.json").value_or(json::object());
      return { { "reactions", o.value("reactions", json::array()) } };
    }
    throw Error("tool_error", "no fixture behaviour for '" + name_ + "'");
  });
}

std::unique_ptr<ToolRegistry> make_bundle_registry(
    const std::filesystem::path &bundle, const AbbreviationTable &table,
    const ConditionLexicon &lexicon) {
  std::vector<std::shared_ptr<Tool>> tools;
  for (const char *name: { "rxn_img_parser", "image2graph", "mol_detector",
                           "ocr", "ner", "rxn_extractor" })
    tools.push_back(std::make_shared<FixtureTool>(name, bundle));
  tools.push_back(std::make_shared<Graph2SmilesTool>(table));
  tools.push_back(std::make_shared<SmilesReconstructorTool>(table));
  tools.push_back(std::make_shared<TableParserTool>(bundle));
  tools.push_back(std::make_shared<ConditionInterpreterTool>(lexicon));

  json faults = read_json(bundle / "faults.json").value_or(json::object());
  auto registry = std::make_unique<ToolRegistry>();
  for (auto &tool: tools) {
    int n = faults.value(tool->name(), 0);
    if (n > 0)
      tool = std::make_shared<FlakyTool>(tool, n);
    registry->add(tool);
  }
  return registry;
}

}  // namespace rxnscope::agents
