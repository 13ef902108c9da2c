//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_CHEMOPS_HPP_
#define RXNSCOPE_CHEMOPS_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/molgraph.hpp"

namespace rxnscope {

/// Token -> substituent fragment. Immutable once loaded.
class AbbreviationTable {
public:
  AbbreviationTable() = default;

  /// {token: "fragment SMILES with one '*' marking the attachment"}.
  static AbbreviationTable from_json(const nlohmann::json &j);
  static AbbreviationTable from_file(const std::filesystem::path &path);

  /// The table compiled into the library.
  static const AbbreviationTable &defaults();

  const Fragment *find(std::string_view token) const;
  bool contains(std::string_view token) const { return find(token) != nullptr; }
  std::vector<std::string> tokens() const;
  std::size_t size() const { return entries_.size(); }

  void insert(std::string token, Fragment fragment);

private:
  std::map<std::string, Fragment, std::less<>> entries_;
};

/// Maps unresolvable tokens to isotope-labelled wildcard atoms. One registry
/// lives for one extraction run, so a token keeps its isotope across every
/// molecule of that run.
class AliasRegistry {
public:
  int alias_for(std::string_view token);
  std::optional<std::string> token_for(int isotope) const;
  const std::map<int, std::string> &entries() const { return by_isotope_; }

private:
  std::map<std::string, int, std::less<>> by_token_;
  std::map<int, std::string> by_isotope_;
  int next_ = 1;
};

/// "Ar2 = 2-ClC6H4" style annotation.
struct RGroupFormula {
  std::string label;
  std::string value;

  bool operator==(const RGroupFormula &) const = default;
};

/// Splits an annotation into label/value; nullopt unless the left side is a
/// placeholder label.
std::optional<RGroupFormula> parse_rgroup_formula(std::string_view text);

/// Condensed formulas: linear groups (CF3, NO2, SO2Me, OCH3, CO2Et,
/// (CH2)3CH3 ...) and substituted phenyls ("4-BrC6H4", "3,5-(CF3)2C6H3")
/// attached at the locant-free ring carbon. Throws FormulaError.
Fragment parse_condensed_formula(std::string_view text);

enum class ExpansionSource { kTable, kFormula, kAlias };

struct Expansion {
  Fragment fragment;
  ExpansionSource source;
};

/// Table lookup, then formula parsing, then an isotope-labelled wildcard
/// registered in `aliases`. Never throws for a non-empty token.
Expansion expand_abbreviation(std::string_view token,
                              const AbbreviationTable &table,
                              AliasRegistry &aliases);

/// Replaces every abbreviation atom of g with its expansion.
MolecularGraph expand_abbreviations(const MolecularGraph &g,
                                    const AbbreviationTable &table,
                                    AliasRegistry &aliases);

struct StereoWarning {
  int atom;
  std::string message;

  bool operator==(const StereoWarning &) const = default;
};

struct StereoPerception {
  MolecularGraph graph;
  std::vector<StereoWarning> warnings;
};

/// Tetrahedral tags from wedge bonds (narrow end marks the center) and
/// cis/trans from 2D coordinates. Centers without wedges and double bonds
/// without usable coordinates keep whatever stereo they had. Throws
/// StereoError when a wedge touches an atom without coordinates.
StereoPerception perceive_stereo(const MolecularGraph &g);

}  // namespace rxnscope

#endif  // RXNSCOPE_CHEMOPS_HPP_
