//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <set>

#include "rxnscope/error.hpp"
#include "rxnscope/reaction.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

using ojson = nlohmann::ordered_json;

std::string at(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string &path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const nlohmann::json &require(const nlohmann::json &j, const std::string &key,
                              const std::string &path) {
  if (!j.is_object())
    throw DecodeError(path.empty() ? "$" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw DecodeError(at(path, key), "missing required key");
  return *it;
}

std::string require_string(const nlohmann::json &j, const std::string &key,
                           const std::string &path) {
  const nlohmann::json &v = require(j, key, path);
  if (!v.is_string())
    throw DecodeError(at(path, key), "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const nlohmann::json &j,
                                           const std::string &key,
                                           const std::string &path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  if (!it->is_string())
    throw DecodeError(at(path, key), "expected a string");
  return it->get<std::string>();
}

const nlohmann::json &require_array(const nlohmann::json &j,
                                    const std::string &key,
                                    const std::string &path) {
  const nlohmann::json &v = require(j, key, path);
  if (!v.is_array())
    throw DecodeError(at(path, key), "expected an array");
  return v;
}

ojson encode_molecule(const MoleculeEntry &m) {
  ojson j;
  j["smiles"] = m.smiles;
  if (m.label)
    j["label"] = *m.label;
  return j;
}

MoleculeEntry decode_molecule(const nlohmann::json &j,
                              const std::string &path) {
  return { require_string(j, "smiles", path),
           optional_string(j, "label", path) };
}

ojson encode_condition(const ConditionItem &c) {
  ojson j;
  j["role"] = to_string(c.role);
  j["text"] = c.text;
  if (c.smiles)
    j["smiles"] = *c.smiles;
  if (c.label)
    j["label"] = *c.label;
  return j;
}

ConditionItem decode_condition(const nlohmann::json &j,
                               const std::string &path) {
  std::string role = require_string(j, "role", path);
  auto r = condition_role_from_string(role);
  if (!r)
    throw DecodeError(at(path, "role"), "unknown condition role '" + role + "'");
  return { *r, require_string(j, "text", path),
           optional_string(j, "smiles", path),
           optional_string(j, "label", path) };
}

bool has_placeholder(const std::string &smiles) {
  try {
    MolecularGraph g = parse_smiles(smiles);
    for (const AtomToken &a: g.atoms)
      if (a.is_placeholder())
        return true;
  } catch (const Error &) {
  }
  return false;
}

}  // namespace

std::vector<RecordIssue> validate_records(
    const std::vector<ReactionRecord> &records) {
  std::vector<RecordIssue> issues;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ReactionRecord &r = records[i];
    std::string path = at("reactions", i);
    if (r.reaction_id.empty())
      issues.push_back({ at(path, "reaction_id"), "empty reaction id" });
    else if (!ids.insert(r.reaction_id).second)
      issues.push_back({ at(path, "reaction_id"),
                         "duplicate reaction id " + r.reaction_id });
    bool is_template = false;
    for (const auto *side: { &r.reactants, &r.products })
      for (const MoleculeEntry &m: *side)
        is_template = is_template || has_placeholder(m.smiles);
    for (auto [name, side]: { std::pair { "reactants", &r.reactants },
                              std::pair { "products", &r.products } }) {
      if (side->empty() && !is_template)
        issues.push_back({ at(path, name), "no molecules" });
      for (std::size_t k = 0; k < side->size(); ++k) {
        const MoleculeEntry &m = (*side)[k];
        std::string mp = at(at(path, name), k);
        try {
          parse_smiles(m.smiles);
        } catch (const Error &e) {
          issues.push_back({ at(mp, "smiles"), e.what() });
        }
        if (m.label && m.label->empty())
          issues.push_back({ at(mp, "label"), "empty label" });
      }
    }
    for (std::size_t k = 0; k < r.conditions.size(); ++k) {
      const ConditionItem &c = r.conditions[k];
      std::string cp = at(at(path, "conditions"), k);
      if (c.text.empty())
        issues.push_back({ at(cp, "text"), "empty condition text" });
      if (c.smiles) {
        try {
          parse_smiles(*c.smiles);
        } catch (const Error &e) {
          issues.push_back({ at(cp, "smiles"), e.what() });
        }
      }
    }
  }
  return issues;
}

nlohmann::ordered_json encode_record(const ReactionRecord &r) {
  ojson j;
  j["reaction_id"] = r.reaction_id;
  j["reactants"] = ojson::array();
  for (const MoleculeEntry &m: r.reactants)
    j["reactants"].push_back(encode_molecule(m));
  j["conditions"] = ojson::array();
  for (const ConditionItem &c: r.conditions)
    j["conditions"].push_back(encode_condition(c));
  j["products"] = ojson::array();
  for (const MoleculeEntry &m: r.products)
    j["products"].push_back(encode_molecule(m));
  if (!r.additional_info.empty()) {
    j["additional_info"] = ojson::array();
    for (const std::string &s: r.additional_info)
      j["additional_info"].push_back(ojson { { "text", s } });
  }
  return j;
}

nlohmann::ordered_json encode_document(const ReactionDocument &doc) {
  ojson j;
  j["reactions"] = ojson::array();
  for (const ReactionRecord &r: doc.reactions)
    j["reactions"].push_back(encode_record(r));
  j["Text description"] = doc.text_description;
  return j;
}

std::string encode_document_text(const ReactionDocument &doc, int indent) {
  return encode_document(doc).dump(indent);
}

ReactionRecord decode_record(const nlohmann::json &j, const std::string &path) {
  ReactionRecord r;
  r.reaction_id = require_string(j, "reaction_id", path);
  const auto &reactants = require_array(j, "reactants", path);
  for (std::size_t i = 0; i < reactants.size(); ++i)
    r.reactants.push_back(
        decode_molecule(reactants[i], at(at(path, "reactants"), i)));
  const auto &conditions = require_array(j, "conditions", path);
  for (std::size_t i = 0; i < conditions.size(); ++i)
    r.conditions.push_back(
        decode_condition(conditions[i], at(at(path, "conditions"), i)));
  const auto &products = require_array(j, "products", path);
  for (std::size_t i = 0; i < products.size(); ++i)
    r.products.push_back(
        decode_molecule(products[i], at(at(path, "products"), i)));
  if (j.contains("additional_info")) {
    const auto &info = require_array(j, "additional_info", path);
    for (std::size_t i = 0; i < info.size(); ++i) {
      std::string ip = at(at(path, "additional_info"), i);
      if (info[i].is_string())
        r.additional_info.push_back(info[i].get<std::string>());
      else
        r.additional_info.push_back(require_string(info[i], "text", ip));
    }
  }
  return r;
}

ReactionDocument decode_document(const nlohmann::json &j) {
  ReactionDocument doc;
  const auto &reactions = require_array(j, "reactions", "");
  for (std::size_t i = 0; i < reactions.size(); ++i)
    doc.reactions.push_back(decode_record(reactions[i], at("reactions", i)));
  auto it = j.find("Text description");
  if (it != j.end()) {
    if (it->is_string()) {
      doc.text_description.push_back(it->get<std::string>());
    } else if (it->is_array()) {
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string())
          throw DecodeError(at("Text description", i), "expected a string");
        doc.text_description.push_back((*it)[i].get<std::string>());
      }
    } else {
      throw DecodeError("Text description", "expected a string or array");
    }
  }
  return doc;
}

ReactionDocument decode_document_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw DecodeError("$", e.what());
  }
  return decode_document(j);
}

}  // namespace rxnscope
