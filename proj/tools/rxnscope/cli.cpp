//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rxnscope/agents.hpp"
#include "rxnscope/chemops.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/eval.hpp"
#include "rxnscope/reaction.hpp"
#include "rxnscope/rgroup.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("io_error", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("io_error", "cannot write " + path);
  out << text;
}

json parse_json_file(const std::string &path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded())
    throw DecodeError(path, "not valid JSON");
  return j;
}

ordered_json error_json(const std::string &kind, const std::string &message) {
  ordered_json e = { { "kind", kind }, { "message", message } };
  return { { "error", e } };
}

// "R1=Ph,R2=H" -> {R1: Ph, R2: H}
std::map<std::string, std::string> parse_assignments(const std::string &text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string pair;
  while (std::getline(in, pair, ',')) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      throw Error("usage_error", "expected LABEL=VALUE, got '" + pair + "'");
    std::string label = pair.substr(0, eq);
    if (label.size() > 2 && label.front() == '[' && label.back() == ']')
      label = label.substr(1, label.size() - 2);
    out[label] = pair.substr(eq + 1);
  }
  return out;
}

struct Options {
  std::string smiles;
  std::vector<std::string> smiles_list;
  bool no_stereo = false;
  std::string template_text;
  std::string assign;
  std::string variant;
  std::string in;
  std::string text;
  std::string bundle;
  std::string backend = "scripted";
  std::string config;
  std::string out;
  std::string trace;
  int retry_budget = 2;
  std::string pred;
  std::string gold;
  std::string descriptor;
};

ordered_json cmd_canonicalize(const Options &o) {
  return { { "smiles", canonicalize(o.smiles, !o.no_stereo) } };
}

ordered_json cmd_validate(const Options &o) {
  ordered_json results = ordered_json::array();
  for (const auto &s: o.smiles_list) {
    ordered_json r = { { "smiles", s } };
    try {
      MolecularGraph g = parse_smiles(s);
      r["valid"] = is_valid(g);
      ordered_json problems = ordered_json::array();
      for (const auto &v: validate_graph(g))
        problems.push_back(v.rule + ": " + v.message);
      if (!problems.empty())
        r["problems"] = problems;
    } catch (const SmilesParseError &e) {
      r["valid"] = false;
      r["problems"] = { std::string("parse: ") + e.what() };
    }
    results.push_back(r);
  }
  return { { "results", results } };
}

ordered_json cmd_substitute(const Options &o) {
  RGroupAssignment a;
  for (const auto &[label, value]: parse_assignments(o.assign))
    a.bind(label, value);
  MolecularGraph g = parse_smiles(o.template_text);
  AliasRegistry aliases;
  MolecularGraph out = substitute_placeholders(g, a, AbbreviationTable::defaults(),
                                               aliases);
  MolecularGraph expanded =
      expand_abbreviations(out, AbbreviationTable::defaults(), aliases);
  return { { "smiles", canonical_smiles(expanded) } };
}

ordered_json cmd_reconstruct(const Options &o) {
  json t = parse_json_file(o.template_text);
  std::vector<MolecularGraph> reactants;
  std::vector<MolecularGraph> products;
  for (const auto &s: t.at("reactants"))
    reactants.push_back(parse_smiles(s.get<std::string>()));
  for (const auto &s: t.at("products"))
    products.push_back(parse_smiles(s.get<std::string>()));
  if (products.empty())
    throw Error("usage_error", "template needs a product");
  ReactionTemplate rt = ReactionTemplate::from_graphs(reactants, products);
  std::vector<std::string> warnings;
  RGroupAssignment a = extract_rgroup_fragments(rt.product_templates.front(),
                                                parse_smiles(o.variant),
                                                &warnings);
  ordered_json assignment = ordered_json::object();
  for (const auto &[label, b]: a.bindings)
    assignment[label] = binding_text(b);
  return { { "assignment", assignment },
           { "reactants",
             reconstruct_reactants(rt, a, AbbreviationTable::defaults()) },
           { "warnings", warnings } };
}

ordered_json cmd_table(const Options &o) {
  ordered_json rows = ordered_json::array();
  for (const auto &r: parse_rgroup_table(read_file(o.in)))
    rows.push_back({ { "entry", r.entry },
                     { "values", r.values },
                     { "metadata", r.metadata } });
  return { { "rows", rows } };
}

ordered_json cmd_conditions(const Options &o) {
  ordered_json items = ordered_json::array();
  for (const auto &c: classify_condition(o.text, ConditionLexicon::defaults())) {
    ordered_json j = { { "role", to_string(c.role) }, { "text", c.text } };
    if (c.smiles)
      j["smiles"] = *c.smiles;
    if (c.label)
      j["label"] = *c.label;
    items.push_back(j);
  }
  return { { "conditions", items } };
}

std::unique_ptr<agents::ReasoningBackend> make_backend(const Options &o) {
  if (o.backend == "scripted")
    return std::make_unique<agents::ScriptedBackend>();
  std::optional<std::filesystem::path> config;
  if (!o.config.empty())
    config = o.config;
  return std::make_unique<agents::RemoteBackend>(
      agents::RemoteConfig::load(config));
}

ordered_json cmd_extract(const Options &o, std::ostream &err) {
  agents::InputDescriptor d = agents::load_bundle(o.bundle);
  auto registry = agents::make_bundle_registry(
      o.bundle, AbbreviationTable::defaults(), ConditionLexicon::defaults());
  auto backend = make_backend(o);
  agents::PipelineOptions opts;
  opts.retry_budget = o.retry_budget;
  agents::ExtractionResult r;
  try {
    r = agents::run_extraction(d, *registry, *backend, opts);
  } catch (const agents::ExtractionError &e) {
    if (!o.trace.empty())
      write_file(o.trace, e.trace().to_json().dump(2) + "\n");
    throw;
  }
  for (const auto &w: r.warnings)
    err << "warning: " << w << "\n";
  if (!o.trace.empty())
    write_file(o.trace, r.trace.to_json().dump(2) + "\n");
  ordered_json doc = encode_document(r.document());
  if (r.records.empty() && !r.molecules.empty()) {
    ordered_json mols = ordered_json::array();
    for (const auto &m: r.molecules) {
      ordered_json e = { { "smiles", m.smiles } };
      if (m.label)
        e["label"] = *m.label;
      mols.push_back(e);
    }
    doc["molecules"] = mols;
  }
  if (o.out.empty())
    return doc;
  write_file(o.out, doc.dump(2) + "\n");
  return { { "out", o.out },
           { "records", r.records.size() },
           { "warnings", r.warnings.size() } };
}

ordered_json cmd_evaluate(const Options &o) {
  ReactionDocument pred = decode_document(parse_json_file(o.pred));
  ReactionDocument gold = decode_document(parse_json_file(o.gold));
  return report_to_json(evaluate(pred.reactions, gold.reactions));
}

ordered_json cmd_graph(const Options &o) {
  if (!o.in.empty())
    return { { "smiles",
               write_smiles(graph_from_json(parse_json_file(o.in))) } };
  return ordered_json::parse(graph_to_json(parse_smiles(o.smiles)).dump());
}

ordered_json cmd_plan(const Options &o) {
  agents::InputDescriptor d =
      agents::InputDescriptor::from_json(parse_json_file(o.descriptor));
  agents::ScriptedBackend backend;
  agents::Trace trace;
  agents::Plan p = agents::plan_extraction(d, backend, trace);
  ordered_json issues = ordered_json::array();
  for (const auto &i: agents::review_plan(p, d))
    issues.push_back({ { "kind", to_string(i.kind) }, { "message", i.message } });
  return { { "plan", p.to_json() }, { "issues", issues } };
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app { "Chemical reaction extraction toolkit", "rxnscope" };
  app.require_subcommand(1);
  Options o;

  auto *canon = app.add_subcommand("canonicalize", "Canonical SMILES");
  canon->add_option("smiles", o.smiles)->required();
  canon->add_flag("--no-stereo", o.no_stereo, "Drop stereochemistry");

  auto *validate = app.add_subcommand("validate", "Check SMILES validity");
  validate->add_option("smiles", o.smiles_list)->required();

  auto *substitute =
      app.add_subcommand("substitute", "Bind placeholders in a template");
  substitute->add_option("--template", o.template_text)->required();
  substitute->add_option("--assign", o.assign, "R1=Ph,R2=H")->required();

  auto *reconstruct = app.add_subcommand(
      "reconstruct", "Recover reactants of a product variant");
  reconstruct->add_option("--template", o.template_text,
                          "JSON file {reactants: [...], products: [...]}")
      ->required();
  reconstruct->add_option("--variant", o.variant)->required();

  auto *table = app.add_subcommand("table", "Parse an R-group table");
  table->add_option("--in", o.in)->required();

  auto *conditions =
      app.add_subcommand("conditions", "Classify condition text");
  conditions->add_option("--text", o.text)->required();

  auto *extract = app.add_subcommand("extract", "Run the extraction pipeline");
  extract->add_option("--bundle", o.bundle)->required();
  extract->add_option("--backend", o.backend)
      ->check(CLI::IsMember({ "scripted", "remote" }));
  extract->add_option("--config", o.config, "Remote backend config file");
  extract->add_option("--out", o.out);
  extract->add_option("--trace", o.trace);
  extract->add_option("--retry-budget", o.retry_budget)
      ->check(CLI::PositiveNumber);

  auto *evaluate_cmd =
      app.add_subcommand("evaluate", "Score predictions against gold");
  evaluate_cmd->add_option("--pred", o.pred)->required();
  evaluate_cmd->add_option("--gold", o.gold)->required();

  auto *graph = app.add_subcommand("graph", "SMILES to graph JSON and back");
  auto *graph_smiles = graph->add_option("smiles", o.smiles);
  auto *graph_in = graph->add_option("--in", o.in, "Graph JSON file");
  graph_smiles->excludes(graph_in);
  graph->require_option(1);

  auto *plan = app.add_subcommand("plan", "Plan and review for a descriptor");
  plan->add_option("--descriptor", o.descriptor)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp &) {
    err << app.help();
    out << ordered_json { { "help", true } }.dump() << "\n";
    return kSuccess;
  } catch (const CLI::CallForAllHelp &) {
    err << app.help("", CLI::AppFormatMode::All);
    out << ordered_json { { "help", true } }.dump() << "\n";
    return kSuccess;
  } catch (const CLI::ParseError &e) {
    err << "usage: " << e.what() << "\n";
    out << error_json("usage_error", e.what()).dump() << "\n";
    return kUsageError;
  }

  try {
    ordered_json result;
    if (*canon)
      result = cmd_canonicalize(o);
    else if (*validate)
      result = cmd_validate(o);
    else if (*substitute)
      result = cmd_substitute(o);
    else if (*reconstruct)
      result = cmd_reconstruct(o);
    else if (*table)
      result = cmd_table(o);
    else if (*conditions)
      result = cmd_conditions(o);
    else if (*extract)
      result = cmd_extract(o, err);
    else if (*evaluate_cmd)
      result = cmd_evaluate(o);
    else if (*graph)
      result = cmd_graph(o);
    else if (*plan)
      result = cmd_plan(o);
    out << result.dump(2) << "\n";
    return kSuccess;
  } catch (const Error &e) {
    int code = e.kind() == "usage_error" ? kUsageError : kDomainError;
    ordered_json j = error_json(e.kind(), e.what());
    if (const auto *m = dynamic_cast<const MissingBindingsError *>(&e))
      j["error"]["labels"] = m->labels();
    if (const auto *d = dynamic_cast<const DecodeError *>(&e))
      j["error"]["path"] = d->path();
    err << "error: " << e.what() << "\n";
    out << j.dump(2) << "\n";
    return code;
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << "\n";
    out << error_json("json_error", e.what()).dump(2) << "\n";
    return kDomainError;
  }
}

}  // namespace rxnscope::cli
