//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/reaction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>
#include <tuple>

#include "rxnscope/error.hpp"
#include "rxnscope/molgraph.hpp"

namespace rxnscope {
namespace internal {
extern const std::string_view kDefaultLexiconJson;
}  // namespace internal

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in { std::string(s) };
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

// Commas between digits ("1,4-dioxane") and inside parentheses do not split.
std::vector<std::string> split_pieces(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[')
      ++depth;
    else if ((c == ')' || c == ']') && depth > 0)
      --depth;
    bool between_digits = i > 0 && i + 1 < text.size()
                          && std::isdigit(static_cast<unsigned char>(text[i - 1]))
                          && std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if (depth == 0 && (c == ';' || (c == ',' && !between_digits))) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  std::erase_if(out, [](const std::string &s) { return s.empty(); });
  return out;
}

bool matches(const std::string &s, const char *pattern) {
  return std::regex_search(s, std::regex(pattern, std::regex::icase));
}

bool is_yield(const std::string &p) {
  static const std::regex kYield(
      R"(^\(?(?:yield\s*)?~?\d+(?:\.\d+)?\s*%?(?:\s*(?:-|–|~|to)\s*\d+(?:\.\d+)?)?\s*%\s*(?:yield|isolated|isolated yield)?\)?$)",
      std::regex::icase);
  return std::regex_match(p, kYield);
}

bool is_temperature(const std::string &p) {
  std::string l = lower(p);
  if (l == "rt" || l == "r.t." || l == "room temperature" || l == "reflux")
    return true;
  return matches(p, R"(-?\d+(?:\.\d+)?\s*(?:°|º|o)\s*C\b)")
         || p.find("℃") != std::string::npos
         || matches(p, R"(^-?\d+(?:\.\d+)?\s*K$)");
}

bool is_time(const std::string &p) {
  return matches(p, R"(^\d+(?:\.\d+)?\s*(?:h|hr|hrs|hour|hours|min|mins|minute|minutes|d|day|days|s|sec)$)");
}

bool is_add_info(const std::string &p) {
  return matches(p, R"(\b(?:dr|ee|er|rr|d\.r\.|e\.r\.)\b)")
         || matches(p, R"(\d+(?:\.\d+)?\s*:\s*\d+)");
}

bool is_label_token(const std::string &t) {
  static const std::regex kLabel(R"(^[A-Za-z]{0,3}\d+[a-z]?$)");
  return std::regex_match(t, kLabel);
}

// Amount phrases that precede or follow a reagent name.
std::string strip_amounts(const std::string &p) {
  static const std::regex kAmount(
      R"(\(?\s*\d+(?:\.\d+)?\s*(?:mol\s*%|equiv\.?|eq\.?|mmol|mg|g|mL|µL|uL|M)\s*\)?)",
      std::regex::icase);
  return trim(std::regex_replace(p, kAmount, " "));
}

std::vector<std::string> split_alternatives(const std::string &s) {
  static const std::regex kSep(R"(\s+(?:or|and)\s+|\s*/\s*)",
                               std::regex::icase);
  std::vector<std::string> out;
  std::sregex_token_iterator it(s.begin(), s.end(), kSep, -1);
  for (; it != std::sregex_token_iterator(); ++it) {
    std::string t = trim(it->str());
    if (!t.empty())
      out.push_back(t);
  }
  return out;
}

std::vector<ConditionItem> reagent_items(const std::string &piece,
                                         const ConditionLexicon &lex) {
  std::vector<ConditionItem> out;
  for (const std::string &alt: split_alternatives(strip_amounts(piece))) {
    ConditionItem item { ConditionRole::kReagent, piece, std::nullopt,
                         std::nullopt };
    if (auto s = lex.reagent_smiles(alt))
      item.smiles = *s;
    else if (auto s2 = lex.solvent_smiles(alt))
      item.smiles = *s2;
    else if (!lex.is_reagent(alt) && is_label_token(alt))
      item.label = alt;
    out.push_back(std::move(item));
  }
  if (out.empty())
    out.push_back({ ConditionRole::kReagent, piece, std::nullopt,
                    std::nullopt });
  return out;
}

std::optional<std::string> solvent_for(const std::string &piece,
                                       const ConditionLexicon &lex) {
  static const std::regex kConcentration(R"(\s*\(\s*\d+(?:\.\d+)?\s*M\s*\)\s*$)");
  std::string name = std::regex_replace(piece, kConcentration, "");
  if (auto s = lex.solvent_smiles(name))
    return s;
  // Mixtures such as "THF/H2O" or "PhMe:H2O (1:1)".
  auto parts = split_alternatives(name);
  if (parts.size() < 2)
    return std::nullopt;
  std::string joined;
  for (const std::string &p: parts) {
    auto s = lex.solvent_smiles(p);
    if (!s)
      return std::nullopt;
    if (!joined.empty())
      joined += '.';
    joined += *s;
  }
  return joined;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::string s(line);
  std::vector<std::string> cells;
  if (s.find('\t') != std::string::npos) {
    std::stringstream in(s);
    std::string cell;
    while (std::getline(in, cell, '\t'))
      cells.push_back(trim(cell));
    return cells;
  }
  static const std::regex kWide(R"(\s{2,})");
  if (std::regex_search(trim(s), kWide)) {
    std::string t = trim(s);
    std::sregex_token_iterator it(t.begin(), t.end(), kWide, -1);
    for (; it != std::sregex_token_iterator(); ++it)
      cells.push_back(trim(it->str()));
    return cells;
  }
  return words(s);
}

// "time (h)" -> "time"; the unit stays with the column, not the key.
std::string metadata_key(const std::string &header) {
  static const std::regex kUnit(R"(\s*\([^)]*\)\s*$)");
  std::string key = trim(std::regex_replace(header, kUnit, ""));
  return key.empty() ? header : key;
}

bool is_absent_cell(const std::string &c) {
  return c.empty() || c == "-" || c == "—" || c == "–";
}

}  // namespace

std::string_view to_string(ConditionRole role) {
  switch (role) {
  case ConditionRole::kReagent: return "reagent";
  case ConditionRole::kSolvent: return "solvent";
  case ConditionRole::kTemperature: return "temperature";
  case ConditionRole::kTime: return "time";
  case ConditionRole::kYield: return "yield";
  case ConditionRole::kAddInfo: return "add_info";
  }
  return "add_info";
}

std::optional<ConditionRole> condition_role_from_string(std::string_view s) {
  for (ConditionRole r: { ConditionRole::kReagent, ConditionRole::kSolvent,
                          ConditionRole::kTemperature, ConditionRole::kTime,
                          ConditionRole::kYield, ConditionRole::kAddInfo })
    if (to_string(r) == s)
      return r;
  return std::nullopt;
}

ConditionLexicon ConditionLexicon::from_json(const nlohmann::json &j) {
  ConditionLexicon lex;
  try {
    for (const auto &[k, v]: j.at("solvents").items())
      lex.solvents_[lower(k)] = v.get<std::string>();
    for (const auto &r: j.at("reagents"))
      lex.reagents_.insert(lower(r.get<std::string>()));
    if (j.contains("reagent_smiles"))
      for (const auto &[k, v]: j["reagent_smiles"].items()) {
        lex.reagent_smiles_[lower(k)] = v.get<std::string>();
        lex.reagents_.insert(lower(k));
      }
  } catch (const nlohmann::json::exception &e) {
    throw DecodeError("lexicon", e.what());
  }
  return lex;
}

ConditionLexicon ConditionLexicon::from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw DecodeError(path.string(), "cannot open lexicon file");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error &e) {
    throw DecodeError(path.string(), e.what());
  }
}

const ConditionLexicon &ConditionLexicon::defaults() {
  static const ConditionLexicon kDefault =
      from_json(nlohmann::json::parse(internal::kDefaultLexiconJson));
  return kDefault;
}

std::optional<std::string> ConditionLexicon::solvent_smiles(
    std::string_view name) const {
  auto it = solvents_.find(lower(name));
  if (it == solvents_.end())
    return std::nullopt;
  return it->second;
}

bool ConditionLexicon::is_reagent(std::string_view name) const {
  return reagents_.count(lower(name)) > 0;
}

std::optional<std::string> ConditionLexicon::reagent_smiles(
    std::string_view name) const {
  auto it = reagent_smiles_.find(lower(name));
  if (it == reagent_smiles_.end())
    return std::nullopt;
  return it->second;
}

std::vector<ConditionItem> classify_condition(std::string_view text,
                                              const ConditionLexicon &lexicon) {
  std::vector<ConditionItem> out;
  for (const std::string &piece: split_pieces(text)) {
    auto plain = [&](ConditionRole r) {
      out.push_back({ r, piece, std::nullopt, std::nullopt });
    };
    if (is_yield(piece)) {
      plain(ConditionRole::kYield);
      continue;
    }
    if (is_temperature(piece)) {
      plain(ConditionRole::kTemperature);
      continue;
    }
    if (is_time(piece)) {
      plain(ConditionRole::kTime);
      continue;
    }
    if (is_add_info(piece)) {
      plain(ConditionRole::kAddInfo);
      continue;
    }
    bool reagent = matches(piece, R"(mol\s*%|\bequiv)");
    for (const std::string &w: words(strip_amounts(piece)))
      reagent = reagent || lexicon.is_reagent(w);
    if (reagent) {
      for (ConditionItem &item: reagent_items(piece, lexicon))
        out.push_back(std::move(item));
      continue;
    }
    if (auto s = solvent_for(piece, lexicon)) {
      out.push_back({ ConditionRole::kSolvent, piece, *s, std::nullopt });
      continue;
    }
    plain(ConditionRole::kAddInfo);
  }
  return out;
}

AlignedRecords align_conditions(
    const std::vector<ConditionItem> &shared,
    const std::map<std::string, std::vector<ConditionItem>> &per_variant,
    std::vector<ReactionRecord> records) {
  AlignedRecords out;
  std::set<std::string> used;
  for (ReactionRecord &r: records) {
    std::vector<ConditionItem> items;
    auto add = [&](const ConditionItem &c) {
      auto key = std::tie(c.role, c.text, c.label);
      for (const ConditionItem &e: items)
        if (std::tie(e.role, e.text, e.label) == key)
          return;
      items.push_back(c);
    };
    for (const ConditionItem &c: r.conditions)
      add(c);
    for (const ConditionItem &c: shared)
      add(c);
    for (const MoleculeEntry &p: r.products) {
      if (!p.label)
        continue;
      auto it = per_variant.find(*p.label);
      if (it == per_variant.end())
        continue;
      used.insert(*p.label);
      for (const ConditionItem &c: it->second)
        add(c);
    }
    r.conditions = std::move(items);
  }
  for (const auto &[label, items]: per_variant) {
    if (used.count(label))
      continue;
    out.warnings.push_back("no record has product label " + label);
    for (const ConditionItem &c: items)
      out.residue.push_back({ label, c });
  }
  out.records = std::move(records);
  return out;
}

std::vector<RGroupTableRow> parse_rgroup_table(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::stringstream in { std::string(text) };
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      if (!trim(line).empty())
        lines.push_back(line);
    }
  }
  if (lines.empty())
    throw TableParseError(0, "table has no header row");

  std::vector<std::string> header = split_cells(lines[0]);
  std::vector<RGroupTableRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    int row_no = static_cast<int>(i);
    std::vector<std::string> cells = split_cells(lines[i]);
    if (cells.size() > header.size())
      throw TableParseError(row_no, std::to_string(cells.size())
                                        + " cells but only "
                                        + std::to_string(header.size())
                                        + " columns");
    RGroupTableRow row;
    row.entry = row_no;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string &h = header[c];
      const std::string &v = cells[c];
      if (lower(h) == "entry") {
        try {
          std::size_t used = 0;
          row.entry = std::stoi(v, &used);
          if (used != v.size() || row.entry < 1)
            throw std::invalid_argument(v);
        } catch (const std::exception &) {
          throw TableParseError(row_no, "entry '" + v
                                            + "' is not a positive integer");
        }
        continue;
      }
      if (is_absent_cell(v))
        continue;
      if (is_placeholder_label(h))
        row.values[h] = v;
      else
        row.metadata[metadata_key(h)] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rxnscope
