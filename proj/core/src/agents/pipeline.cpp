//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/agents/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rxnscope/agents/detection.hpp"
#include "rxnscope/agents/memory.hpp"
#include "rxnscope/agents/observer.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope::agents {

using nlohmann::json;

// Trace ------------------------------------------------------------------------

json TraceEvent::to_json() const {
  json j = { { "step", step },
             { "agent", to_string(agent) },
             { "event", event },
             { "attempt", attempt } };
  if (invocation) {
    j["tool"] = invocation->tool;
    j["request"] = invocation->request;
    j["response"] = invocation->response.to_json();
  }
  if (!detail.is_null())
    j["detail"] = detail;
  return j;
}

TraceEvent TraceEvent::from_json(const json &j) {
  TraceEvent e;
  e.step = j.at("step").get<int>();
  auto kind = agent_kind_from_string(j.at("agent").get<std::string>());
  if (!kind)
    throw DecodeError("agent", "unknown agent");
  e.agent = *kind;
  e.event = j.at("event").get<std::string>();
  e.attempt = j.value("attempt", 0);
  if (j.contains("tool")) {
    ToolInvocation inv;
    inv.tool = j["tool"].get<std::string>();
    inv.request = j.value("request", json());
    inv.response = ToolResponse::from_json(j.at("response"));
    inv.attempt = e.attempt;
    e.invocation = std::move(inv);
  }
  if (j.contains("detail"))
    e.detail = j["detail"];
  return e;
}

std::vector<ToolInvocation> Trace::invocations() const {
  std::vector<ToolInvocation> out;
  for (const auto &e: events)
    if (e.invocation)
      out.push_back(*e.invocation);
  return out;
}

json Trace::to_json() const {
  json events_json = json::array();
  for (const auto &e: events)
    events_json.push_back(e.to_json());
  return { { "events", events_json } };
}

Trace Trace::from_json(const json &j) {
  Trace t;
  const json &events = j.is_array() ? j : j.at("events");
  for (const auto &e: events)
    t.events.push_back(TraceEvent::from_json(e));
  return t;
}

ReactionDocument ExtractionResult::document() const {
  return { records, text_annotations };
}

InputDescriptor load_bundle(const std::filesystem::path &dir) {
  std::ifstream in(dir / "descriptor.json");
  if (!in)
    throw Error("bundle_error",
                "cannot read " + (dir / "descriptor.json").string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw DecodeError("descriptor.json", "not valid JSON");
  return InputDescriptor::from_json(j, dir);
}

// Execution --------------------------------------------------------------------

namespace {

class StepFailure: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Variant {
  std::string label;
  std::vector<MoleculeEntry> reactants;
  std::vector<MoleculeEntry> products;
  json assignment = json::object();
};

struct State {
  std::vector<MoleculeEntry> template_reactants;
  std::vector<MoleculeEntry> template_products;
  std::vector<MoleculeEntry> molecules;
  std::vector<Variant> variants;
  std::vector<ConditionItem> shared;
  std::vector<ConditionItem> template_only;
  std::map<std::string, std::vector<ConditionItem>> per_variant;
  std::vector<std::string> text_annotations;
  std::vector<ReactionRecord> text_reactions;
  std::vector<ReactionRecord> records;
  std::vector<std::string> warnings;
};

json entries_to_json(const std::vector<MoleculeEntry> &ms) {
  json out = json::array();
  for (const auto &m: ms) {
    json e = { { "smiles", m.smiles } };
    if (m.label)
      e["label"] = *m.label;
    out.push_back(e);
  }
  return out;
}

json items_to_json(const std::vector<ConditionItem> &items) {
  json out = json::array();
  for (const auto &c: items)
    out.push_back(condition_to_json(c));
  return out;
}

std::string lower(std::string s) {
  for (char &c: s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string normalize_space(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c: s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = !out.empty();
      continue;
    }
    if (gap)
      out += ' ';
    gap = false;
    out += c;
  }
  return out;
}

void bind_as_tokens(MolecularGraph &g,
                    const std::map<std::string, std::string> &values) {
  for (AtomToken &a: g.atoms) {
    if (!a.is_placeholder())
      continue;
    auto it = values.find(placeholder_label(a));
    if (it == values.end())
      continue;
    AtomToken t = AtomToken::abbreviation(it->second);
    t.coords = a.coords;
    a = std::move(t);
  }
}

bool resolvable(const std::string &token, const AbbreviationTable &table) {
  if (table.contains(token))
    return true;
  try {
    parse_condensed_formula(token);
    return true;
  } catch (const FormulaError &) {
    return false;
  }
}

class Runner {
public:
  Runner(const InputDescriptor &d, ToolRegistry &tools,
         ReasoningBackend &backend, const PipelineOptions &options,
         Trace &trace)
      : d_(d), tools_(tools), backend_(backend), options_(options),
        trace_(trace) { }

  ExtractionResult run(const Plan &plan) {
    std::set<std::string> available;
    for (Modality m: d_.modalities)
      available.insert(std::string(bundle_key(m)));
    int budget = std::max(1, options_.retry_budget);

    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
      const PlanStep &step = plan.steps[i];
      step_ = static_cast<int>(i);
      memory_.begin_step(step_);

      std::vector<std::string> missing;
      for (const auto &in: step.inputs)
        if (!available.count(in))
          missing.push_back(in);
      if (!missing.empty() && step.kind != AgentKind::kDataStructure) {
        event(step.kind, "skipped", { { "missing_inputs", missing } });
        state_.warnings.push_back(std::string(to_string(step.kind))
                                  + " skipped: missing inputs");
        memory_.archive("step_status", { { "step", step_ },
                                         { "status", "skipped" } });
        continue;
      }

      bool passed = false;
      std::vector<std::string> reasons;
      for (attempt_ = 1; attempt_ <= budget && !passed; ++attempt_) {
        State staged = state_;
        json expectations = json::object();
        json output;
        Verdict v;
        try {
          output = run_agent(step.kind, staged, expectations);
          v = observe_step(step.kind, output, expectations);
        } catch (const std::exception &e) {
          v.pass = false;
          v.reasons = { e.what() };
        }
        event(step.kind, "verdict", v.to_json());
        if (v.pass) {
          passed = true;
          state_ = std::move(staged);
          for (auto it = output.begin(); it != output.end(); ++it)
            memory_.put(it.key(), it.value());
        } else {
          reasons = v.reasons;
        }
      }
      attempt_ = 0;

      if (passed) {
        for (const auto &out: step.outputs)
          available.insert(out);
        memory_.archive("step_status", { { "step", step_ },
                                         { "status", "ok" } });
        continue;
      }
      event(step.kind, "failed", { { "reasons", reasons } });
      memory_.archive("step_status", { { "step", step_ },
                                       { "status", "failed" } });
      std::string msg = "step " + std::to_string(i) + " ("
                        + std::string(to_string(step.kind)) + ") failed after "
                        + std::to_string(budget) + " attempts";
      if (!reasons.empty())
        msg += ": " + reasons.front();
      if (i == 0)
        throw ExtractionError(msg, trace_);
      state_.warnings.push_back(msg);
    }

    ExtractionResult r;
    r.plan = plan;
    r.template_reactants = state_.template_reactants;
    r.template_products = state_.template_products;
    r.molecules = state_.molecules;
    r.records = state_.records;
    r.text_annotations = state_.text_annotations;
    r.warnings = state_.warnings;
    r.trace = trace_;
    r.digest = memory_.digest();
    r.archive = memory_.long_term();
    return r;
  }

private:
  void event(AgentKind kind, std::string name, json detail = nullptr) {
    TraceEvent e;
    e.step = step_;
    e.agent = kind;
    e.event = std::move(name);
    e.attempt = attempt_;
    e.detail = std::move(detail);
    trace_.events.push_back(std::move(e));
  }

  json call_tool(AgentKind kind, const std::string &name,
                 const json &request) {
    ToolResponse res = tools_.invoke(name, request);
    TraceEvent e;
    e.step = step_;
    e.agent = kind;
    e.event = "tool";
    e.attempt = attempt_;
    e.invocation = ToolInvocation { name, request, res, attempt_ };
    trace_.events.push_back(std::move(e));
    memory_.note({ { "tool", name }, { "status", res.ok() ? "ok" : "error" } });
    if (!res.ok())
      throw StepFailure(name + ": " + res.error);
    return res.result;
  }

  BackendReply consult(AgentKind kind, json observation) {
    BackendRequest req;
    req.agent = kind;
    req.role_prompt = role_prompt(kind);
    req.digest = memory_.digest();
    req.observation = std::move(observation);
    BackendReply reply = backend_.call(req);
    event(kind, "backend", { { "observation", req.observation },
                             { "reply", reply.to_json() } });
    if (reply.action == "error")
      throw StepFailure("backend: " + reply.message);
    return reply;
  }

  const AbbreviationTable &table() const { return *options_.table; }

  std::vector<std::string> unknown_tokens(
      const std::vector<MolecularGraph> &graphs) const {
    std::set<std::string> out;
    for (const auto &g: graphs)
      for (const auto &a: g.atoms)
        if (a.kind == AtomKind::kAbbreviation && !resolvable(a.text, table()))
          out.insert(a.text);
    return { out.begin(), out.end() };
  }

  // Applies backend corrections, then converts each graph to SMILES.
  std::vector<MoleculeEntry> to_smiles(AgentKind kind,
                                       std::vector<MolecularGraph> &graphs,
                                       const json &annotations,
                                       State &s) {
    json obs = { { "unknown_tokens", unknown_tokens(graphs) },
                 { "annotations", annotations } };
    BackendReply reply = consult(kind, obs);
    std::map<std::string, std::string> fixes;
    std::map<std::string, std::string> rgroups;
    if (reply.corrections.contains("tokens"))
      fixes = reply.corrections["tokens"].get<decltype(fixes)>();
    if (reply.corrections.contains("rgroups"))
      rgroups = reply.corrections["rgroups"].get<decltype(rgroups)>();

    std::vector<MoleculeEntry> out;
    for (MolecularGraph &g: graphs) {
      for (AtomToken &a: g.atoms)
        if (a.kind == AtomKind::kAbbreviation && fixes.count(a.text))
          a.text = fixes[a.text];
      bind_as_tokens(g, rgroups);
      json r = call_tool(kind, "graph2smiles", { { "graph", graph_to_json(g) } });
      for (const auto &w: r.value("warnings", json::array()))
        s.warnings.push_back(w.get<std::string>());
      out.push_back({ r.at("smiles").get<std::string>(), g.label });
    }
    return out;
  }

  json run_agent(AgentKind kind, State &s, json &expectations) {
    switch (kind) {
    case AgentKind::kReactionTemplateParsing: return template_parsing(s);
    case AgentKind::kMolecularRecognition:
      return molecular_recognition(s, expectations);
    case AgentKind::kStructureRGroup: return structure_rgroup(s);
    case AgentKind::kTextRGroup: return text_rgroup(s);
    case AgentKind::kConditionInterpretation: return conditions(s);
    case AgentKind::kTextExtraction: return text_extraction(s);
    case AgentKind::kDataStructure: return data_structure(s);
    default:
      throw StepFailure(std::string(to_string(kind))
                        + " is not an executable step");
    }
  }

  json template_parsing(State &s) {
    const AgentKind kind = AgentKind::kReactionTemplateParsing;
    json parsed = call_tool(kind, "rxn_img_parser", json::object());
    std::vector<MolecularGraph> graphs;
    std::size_t n_reactants = 0;
    for (const char *side: { "reactants", "products" }) {
      for (const auto &entry: parsed.at(side)) {
        json g = call_tool(kind, "image2graph",
                           { { "source", "template" },
                             { "side", side },
                             { "index", entry.at("index") } });
        graphs.push_back(graph_from_json(g));
      }
      if (std::string(side) == "reactants")
        n_reactants = graphs.size();
    }
    auto entries = to_smiles(kind, graphs,
                             parsed.value("annotations", json::array()), s);
    s.template_reactants.assign(entries.begin(),
                                entries.begin() + static_cast<long>(n_reactants));
    s.template_products.assign(entries.begin() + static_cast<long>(n_reactants),
                               entries.end());
    if (s.template_products.empty())
      throw StepFailure("template has no product");
    return { { "template",
               { { "reactants", entries_to_json(s.template_reactants) },
                 { "products", entries_to_json(s.template_products) } } } };
  }

  json molecular_recognition(State &s, json &expectations) {
    const AgentKind kind = AgentKind::kMolecularRecognition;
    json det = call_tool(kind, "mol_detector", json::object());
    auto boxes = decode_detection_sequence(tokens_from_json(det.at("tokens")));
    std::size_t mols = static_cast<std::size_t>(
        std::count_if(boxes.begin(), boxes.end(),
                      [](const BoundingBox &b) { return b.kind == "mol"; }));
    expectations["box_count"] = mols;

    std::vector<MolecularGraph> graphs;
    for (std::size_t i = 0; i < mols; ++i)
      graphs.push_back(graph_from_json(call_tool(
          kind, "image2graph", { { "source", "molecules" }, { "index", i } })));
    s.molecules = to_smiles(kind, graphs, json::array(), s);
    return { { "molecules", entries_to_json(s.molecules) } };
  }

  std::vector<MoleculeEntry> derived_reactants(
      const std::vector<std::string> &smiles, const std::string &variant) const {
    std::string suffix;
    const auto &plabel = state_template_product_label_;
    if (plabel && variant.size() > plabel->size()
        && variant.compare(0, plabel->size(), *plabel) == 0)
      suffix = variant.substr(plabel->size());
    std::vector<MoleculeEntry> out;
    for (std::size_t i = 0; i < smiles.size(); ++i) {
      MoleculeEntry e { smiles[i], std::nullopt };
      if (!suffix.empty() && i < template_labels_.size() && template_labels_[i])
        e.label = *template_labels_[i] + suffix;
      out.push_back(std::move(e));
    }
    return out;
  }

  void remember_template_labels(const State &s) {
    template_labels_.clear();
    for (const auto &m: s.template_reactants)
      template_labels_.push_back(m.label);
    state_template_product_label_ = s.template_products.empty()
                                        ? std::nullopt
                                        : s.template_products.front().label;
  }

  json variants_json(const State &s, const json &assignments) const {
    json vs = json::array();
    for (const auto &v: s.variants)
      vs.push_back({ { "label", v.label },
                     { "reactants", entries_to_json(v.reactants) },
                     { "products", entries_to_json(v.products) } });
    return { { "assignments", assignments }, { "variants", vs } };
  }

  json structure_rgroup(State &s) {
    const AgentKind kind = AgentKind::kStructureRGroup;
    remember_template_labels(s);
    json templates = json::array();
    for (const auto &m: s.template_reactants)
      templates.push_back(m.smiles);
    s.variants.clear();
    json assignments = json::object();
    for (std::size_t i = 0; i < s.molecules.size(); ++i) {
      const MoleculeEntry &m = s.molecules[i];
      std::string label = m.label.value_or(std::to_string(i + 1));
      json r;
      try {
        r = call_tool(kind, "smiles_reconstructor",
                      { { "product_template",
                          s.template_products.front().smiles },
                        { "reactant_templates", templates },
                        { "variant", m.smiles } });
      } catch (const StepFailure &e) {
        s.warnings.push_back("molecule " + label + " skipped: " + e.what());
        continue;
      }
      for (const auto &w: r.value("warnings", json::array()))
        s.warnings.push_back(label + ": " + w.get<std::string>());
      Variant v;
      v.label = label;
      v.reactants = derived_reactants(
          r.at("reactants").get<std::vector<std::string>>(), label);
      v.products = { m };
      if (!v.products.front().label)
        v.products.front().label = label;
      v.assignment = r.at("assignment");
      assignments[label] = v.assignment;
      s.variants.push_back(std::move(v));
    }
    if (s.variants.empty() && !s.molecules.empty())
      throw StepFailure("no molecule matches the product template");
    consult(kind, { { "assignments", assignments } });
    return variants_json(s, assignments);
  }

  json text_rgroup(State &s) {
    const AgentKind kind = AgentKind::kTextRGroup;
    remember_template_labels(s);
    json parsed = call_tool(kind, "table_parser", { { "source", "table" } });
    s.variants.clear();
    json assignments = json::object();
    for (const auto &row: parsed.at("rows")) {
      auto values = row.at("values").get<std::map<std::string, std::string>>();
      auto meta = row.at("metadata").get<std::map<std::string, std::string>>();
      std::string label = std::to_string(row.at("entry").get<int>());
      std::vector<ConditionItem> extra;
      for (const auto &[header, value]: meta) {
        std::string h = lower(header);
        if (h.rfind("product", 0) == 0)
          label = value;
      }
      for (const auto &[header, value]: meta) {
        std::string h = lower(header);
        bool bare = !value.empty()
                    && std::all_of(value.begin(), value.end(), [](char c) {
                         return std::isdigit(static_cast<unsigned char>(c))
                                || c == '.';
                       });
        if (h.find("yield") != std::string::npos)
          extra.push_back({ ConditionRole::kYield,
                            bare ? value + "%" : value, std::nullopt,
                            std::nullopt });
        else if (h.find("time") != std::string::npos)
          extra.push_back({ ConditionRole::kTime, bare ? value + " h" : value,
                            std::nullopt, std::nullopt });
      }

      auto build = [&](const std::vector<MoleculeEntry> &side) {
        std::vector<MolecularGraph> out;
        for (const auto &m: side) {
          MolecularGraph g = parse_smiles(m.smiles);
          bind_as_tokens(g, values);
          out.push_back(std::move(g));
        }
        return out;
      };
      std::vector<MolecularGraph> reactants = build(s.template_reactants);
      std::vector<MolecularGraph> products = build(s.template_products);
      std::vector<std::string> rs;
      for (auto &g: reactants)
        rs.push_back(call_tool(kind, "graph2smiles",
                               { { "graph", graph_to_json(g) } })
                         .at("smiles")
                         .get<std::string>());
      Variant v;
      v.label = label;
      v.reactants = derived_reactants(rs, label);
      for (auto &g: products)
        v.products.push_back({ call_tool(kind, "graph2smiles",
                                         { { "graph", graph_to_json(g) } })
                                   .at("smiles")
                                   .get<std::string>(),
                               label });
      v.assignment = values;
      assignments[label] = v.assignment;
      auto &items = s.per_variant[label];
      items.insert(items.end(), extra.begin(), extra.end());
      s.variants.push_back(std::move(v));
    }
    consult(kind, { { "assignments", assignments } });
    return variants_json(s, assignments);
  }

  json conditions(State &s) {
    const AgentKind kind = AgentKind::kConditionInterpretation;
    json ocr = call_tool(kind, "ocr", { { "target", "conditions" } });
    s.shared.clear();
    s.template_only.clear();
    json per = json::object();
    for (const auto &region: ocr.at("regions")) {
      std::string text = region.at("text").get<std::string>();
      json r = call_tool(kind, "condition_interpreter", { { "text", text } });
      std::vector<ConditionItem> items;
      for (const auto &c: r.at("conditions"))
        items.push_back(condition_from_json(c));
      std::string scope = region.value("scope", "shared");
      std::vector<ConditionItem> *dest = &s.shared;
      if (scope == "template")
        dest = &s.template_only;
      else if (scope == "variant")
        dest = &s.per_variant[region.at("label").get<std::string>()];
      dest->insert(dest->end(), items.begin(), items.end());
    }
    for (const auto &[label, items]: s.per_variant)
      per[label] = items_to_json(items);
    json out = { { "conditions",
                   { { "shared", items_to_json(s.shared) },
                     { "template", items_to_json(s.template_only) },
                     { "per_variant", per } } } };
    consult(kind, out);
    return out;
  }

  json text_extraction(State &s) {
    const AgentKind kind = AgentKind::kTextExtraction;
    std::string text =
        call_tool(kind, "ocr", { { "target", "text" } }).value("text", "");
    s.text_annotations.clear();
    s.text_reactions.clear();
    std::istringstream in(text);
    std::string line;
    std::string paragraph;
    auto flush = [&] {
      std::string p = normalize_space(paragraph);
      if (!p.empty())
        s.text_annotations.push_back(p);
      paragraph.clear();
    };
    while (std::getline(in, line)) {
      if (normalize_space(line).empty())
        flush();
      else
        paragraph += " " + line;
    }
    flush();

    json entities = json::array();
    json reactions = json::array();
    if (!s.text_annotations.empty()) {
      entities = call_tool(kind, "ner", { { "text", text } })
                     .value("entities", json::array());
      reactions = call_tool(kind, "rxn_extractor", { { "text", text } })
                      .value("reactions", json::array());
    }
    for (std::size_t i = 0; i < reactions.size(); ++i)
      s.text_reactions.push_back(
          decode_record(reactions[i], "reactions[" + std::to_string(i) + "]"));
    memory_.archive("entities", entities);
    json recs = json::array();
    for (const auto &r: s.text_reactions)
      recs.push_back(json::parse(encode_record(r).dump()));
    json out = { { "text_annotations", s.text_annotations },
                 { "text_reactions", recs } };
    consult(kind, { { "entities", entities },
                    { "reactions", reactions.size() } });
    return out;
  }

  json data_structure(State &s) {
    const AgentKind kind = AgentKind::kDataStructure;
    std::vector<ReactionRecord> records;

    std::map<std::string, std::vector<ConditionItem>> per_variant;
    std::map<std::string, std::vector<std::string>> info;
    for (const auto &[label, items]: s.per_variant)
      for (const auto &c: items) {
        if (c.role == ConditionRole::kAddInfo)
          info[label].push_back(c.text);
        else
          per_variant[label].push_back(c);
      }

    std::vector<ReactionRecord> variants;
    for (std::size_t k = 0; k < s.variants.size(); ++k) {
      ReactionRecord r;
      r.reaction_id = std::to_string(k + 1) + "_1";
      r.reactants = s.variants[k].reactants;
      r.products = s.variants[k].products;
      auto it = info.find(s.variants[k].label);
      if (it != info.end()) {
        std::string joined;
        for (const auto &t: it->second)
          joined += (joined.empty() ? "" : ", ") + t;
        r.additional_info.push_back(joined);
      }
      variants.push_back(std::move(r));
    }
    AlignedRecords aligned =
        align_conditions(s.shared, per_variant, std::move(variants));
    for (const auto &w: aligned.warnings)
      s.warnings.push_back(w);

    if (!s.template_products.empty()) {
      ReactionRecord t;
      t.reaction_id = "0_1";
      t.reactants = s.template_reactants;
      t.products = s.template_products;
      t.conditions = s.shared;
      for (const auto &c: s.template_only)
        if (std::find(t.conditions.begin(), t.conditions.end(), c)
            == t.conditions.end())
          t.conditions.push_back(c);
      records.push_back(std::move(t));
    }
    for (auto &r: aligned.records)
      records.push_back(std::move(r));

    std::set<std::string> ids;
    for (const auto &r: records)
      ids.insert(r.reaction_id);
    for (ReactionRecord r: s.text_reactions) {
      if (ids.count(r.reaction_id))
        r.reaction_id = "t" + r.reaction_id;
      ids.insert(r.reaction_id);
      records.push_back(std::move(r));
    }

    // Labelled reagents drawn as structures take their SMILES.
    for (auto &r: records)
      for (auto &c: r.conditions) {
        if (c.smiles || !c.label)
          continue;
        for (const auto &m: s.molecules)
          if (m.label == c.label)
            c.smiles = m.smiles;
      }

    s.records = records;
    json recs = json::array();
    for (const auto &r: records)
      recs.push_back(json::parse(encode_record(r).dump()));
    consult(kind, { { "record_count", records.size() } });
    return { { "records", recs } };
  }

  const InputDescriptor &d_;
  ToolRegistry &tools_;
  ReasoningBackend &backend_;
  const PipelineOptions &options_;
  Trace &trace_;
  Memory memory_;
  State state_;
  int step_ = -1;
  int attempt_ = 0;
  std::vector<std::optional<std::string>> template_labels_;
  std::optional<std::string> state_template_product_label_;
};

}  // namespace

Plan plan_extraction(const InputDescriptor &d, ReasoningBackend &backend,
                     Trace &trace) {
  auto problems = d.problems();
  if (!problems.empty())
    throw Error("descriptor_error", problems.front());
  BackendRequest req;
  req.agent = AgentKind::kPlanner;
  req.role_prompt = role_prompt(AgentKind::kPlanner);
  req.observation = { { "modalities", d.to_json()["modalities"] } };
  BackendReply reply = backend.call(req);
  TraceEvent e;
  e.event = "plan";
  e.detail = { { "observation", req.observation },
               { "reply", reply.to_json() } };
  trace.events.push_back(e);
  if (reply.action != "plan")
    throw Error("plan_error", reply.message.empty()
                                  ? "backend did not return a plan"
                                  : reply.message);
  std::vector<AgentKind> kinds;
  for (const auto &s: reply.corrections.value("steps", json::array())) {
    auto k = agent_kind_from_string(s.get<std::string>());
    if (!k)
      throw Error("plan_error", "unknown agent '" + s.get<std::string>() + "'");
    kinds.push_back(*k);
  }
  return build_plan(kinds, d);
}

ExtractionResult execute_plan(const Plan &plan, const InputDescriptor &d,
                              ToolRegistry &tools, ReasoningBackend &backend,
                              const PipelineOptions &options, Trace trace) {
  Runner runner(d, tools, backend, options, trace);
  return runner.run(plan);
}

ExtractionResult run_extraction(const InputDescriptor &d, ToolRegistry &tools,
                                ReasoningBackend &backend,
                                const PipelineOptions &options) {
  Trace trace;
  Plan plan = plan_extraction(d, backend, trace);
  for (int round = 0;; ++round) {
    auto issues = review_plan(plan, d);
    json found = json::array();
    for (const auto &i: issues)
      found.push_back({ { "kind", to_string(i.kind) }, { "message", i.message } });
    TraceEvent e;
    e.agent = AgentKind::kPlanObserver;
    e.event = "plan_review";
    e.detail = { { "revision", plan.revision }, { "issues", found } };
    trace.events.push_back(e);
    if (issues.empty())
      break;
    if (round == 1)
      throw ExtractionError("plan review failed: " + issues.front().message,
                            trace);
    int revision = plan.revision + 1;
    plan = plan_extraction(d, backend, trace);
    plan.revision = revision;
  }
  return execute_plan(plan, d, tools, backend, options, std::move(trace));
}

}  // namespace rxnscope::agents
