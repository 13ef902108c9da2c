//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/chemops.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace internal {
extern const std::string_view kDefaultAbbreviationsJson;
}  // namespace internal

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

AbbreviationTable AbbreviationTable::from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw DecodeError("$", "abbreviation table must be a JSON object");
  AbbreviationTable table;
  for (const auto &[token, value]: j.items()) {
    if (!value.is_string())
      throw DecodeError(token, "fragment must be a SMILES string");
    MolecularGraph g;
    try {
      g = parse_smiles(value.get<std::string>());
    } catch (const SmilesParseError &e) {
      throw DecodeError(token, e.what());
    }
    try {
      table.insert(token, fragment_from_dummy(g));
    } catch (const GraphError &e) {
      throw DecodeError(token, e.what());
    }
  }
  return table;
}

AbbreviationTable AbbreviationTable::from_file(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DecodeError(path.string(), "cannot open abbreviation table");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw DecodeError(path.string(), e.what());
  }
  return from_json(j);
}

const AbbreviationTable &AbbreviationTable::defaults() {
  static const AbbreviationTable table =
      from_json(nlohmann::json::parse(internal::kDefaultAbbreviationsJson));
  return table;
}

const Fragment *AbbreviationTable::find(std::string_view token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> AbbreviationTable::tokens() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto &[token, frag]: entries_)
    out.push_back(token);
  return out;
}

void AbbreviationTable::insert(std::string token, Fragment fragment) {
  entries_.insert_or_assign(std::move(token), std::move(fragment));
}

int AliasRegistry::alias_for(std::string_view token) {
  auto it = by_token_.find(token);
  if (it != by_token_.end())
    return it->second;
  int iso = next_++;
  by_token_.emplace(std::string(token), iso);
  by_isotope_.emplace(iso, std::string(token));
  return iso;
}

std::optional<std::string> AliasRegistry::token_for(int isotope) const {
  auto it = by_isotope_.find(isotope);
  if (it == by_isotope_.end())
    return std::nullopt;
  return it->second;
}

std::optional<RGroupFormula> parse_rgroup_formula(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos)
    return std::nullopt;
  std::string label = trim(text.substr(0, eq));
  std::string value = trim(text.substr(eq + 1));
  if (label.size() >= 2 && label.front() == '[' && label.back() == ']')
    label = label.substr(1, label.size() - 2);
  if (label.empty() || value.empty() || !is_placeholder_label(label))
    return std::nullopt;
  return RGroupFormula { label, value };
}

Expansion expand_abbreviation(std::string_view token,
                              const AbbreviationTable &table,
                              AliasRegistry &aliases) {
  std::string key = trim(token);
  if (const Fragment *f = table.find(key))
    return { *f, ExpansionSource::kTable };
  // "i-Pr", "t-Bu" spellings.
  std::string dehyphen = key;
  if (dehyphen.size() > 2 && dehyphen[1] == '-'
      && std::islower(static_cast<unsigned char>(dehyphen[0]))) {
    dehyphen.erase(1, 1);
    if (const Fragment *f = table.find(dehyphen))
      return { *f, ExpansionSource::kTable };
  }
  try {
    return { parse_condensed_formula(key), ExpansionSource::kFormula };
  } catch (const FormulaError &) {
  }
  Fragment f;
  f.graph.add_atom(AtomToken::wildcard(aliases.alias_for(key)));
  f.attachment = 0;
  f.index_map = { 0 };
  return { std::move(f), ExpansionSource::kAlias };
}

MolecularGraph expand_abbreviations(const MolecularGraph &g,
                                    const AbbreviationTable &table,
                                    AliasRegistry &aliases) {
  std::vector<Replacement> reps;
  for (int i = 0; i < g.atom_count(); ++i)
    if (g.atoms[i].kind == AtomKind::kAbbreviation)
      reps.push_back({ i, expand_abbreviation(g.atoms[i].text, table, aliases)
                              .fragment });
  if (reps.empty())
    return g;
  return replace_atoms(g, reps);
}

}  // namespace rxnscope
