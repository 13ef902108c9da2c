//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <regex>

#include "rxnscope/chemops.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

// SMILES text starting at the attachment atom.
const std::map<std::string, std::string, std::less<>> &fixed_tails() {
  static const std::map<std::string, std::string, std::less<>> kTails {
    { "F", "F" },
    { "Cl", "Cl" },
    { "Br", "Br" },
    { "I", "I" },
    { "CF3", "C(F)(F)F" },
    { "CCl3", "C(Cl)(Cl)Cl" },
    { "CBr3", "C(Br)(Br)Br" },
    { "CHF2", "C(F)F" },
    { "CH2F", "CF" },
    { "NO2", "[N+](=O)[O-]" },
    { "CN", "C#N" },
    { "CHO", "C=O" },
    { "OH", "O" },
    { "NH2", "N" },
    { "SH", "S" },
    { "CO2H", "C(=O)O" },
    { "COOH", "C(=O)O" },
    { "CONH2", "C(N)=O" },
    { "NMe2", "N(C)C" },
    { "NEt2", "N(CC)CC" },
    { "NHMe", "NC" },
    { "NHAc", "NC(C)=O" },
    { "OAc", "OC(C)=O" },
    { "OCF3", "OC(F)(F)F" },
    { "SCF3", "SC(F)(F)F" },
    { "CH2OH", "CO" },
    { "Ph", "c1ccccc1" },
    { "C6H5", "c1ccccc1" },
    { "Bn", "Cc1ccccc1" },
    { "Ac", "C(C)=O" },
    { "Tol", "c1ccc(C)cc1" },
    { "iPr", "C(C)C" },
    { "tBu", "C(C)(C)C" },
    { "nPr", "CCC" },
    { "nBu", "CCCC" },
    // Substituents written right-to-left in front of a ring.
    { "MeO", "OC" },
    { "EtO", "OCC" },
    { "O2N", "[N+](=O)[O-]" },
    { "NC", "C#N" },
    { "HO", "O" },
    { "H2N", "N" },
    { "F3C", "C(F)(F)F" },
    { "MeS", "SC" },
    { "Me2N", "N(C)C" },
    { "MeO2C", "C(=O)OC" },
    { "EtO2C", "C(=O)OCC" },
    { "F3CO", "OC(F)(F)F" },
    { "AcO", "OC(C)=O" },
    { "AcHN", "NC(C)=O" },
    { "BnO", "OCc1ccccc1" },
    { "PhO", "Oc1ccccc1" },
  };
  return kTails;
}

std::optional<int> alkyl_length(std::string_view t) {
  if (t == "Me" || t == "CH3")
    return 1;
  if (t == "Et")
    return 2;
  static const std::regex kFormula(R"(C(\d+)H(\d+))");
  static const std::regex kChain(R"(\(CH2\)(\d+)CH3)");
  std::cmatch m;
  std::string s(t);
  if (std::regex_match(s.c_str(), m, kFormula)) {
    int c = std::stoi(m[1]);
    int h = std::stoi(m[2]);
    if (c >= 1 && c <= 20 && h == 2 * c + 1)
      return c;
    return std::nullopt;
  }
  if (std::regex_match(s.c_str(), m, kChain)) {
    int k = std::stoi(m[1]);
    if (k >= 1 && k <= 20)
      return k + 1;
    return std::nullopt;
  }
  // CH2CH2...CH3
  int n = 0;
  std::string_view rest = t;
  while (rest.substr(0, 3) == "CH2") {
    ++n;
    rest.remove_prefix(3);
  }
  if (n > 0 && rest == "CH3")
    return n + 1;
  return std::nullopt;
}

std::optional<std::string> linear_tail(std::string_view t, int depth = 0) {
  if (t.empty() || depth > 4)
    return std::nullopt;
  auto fixed = fixed_tails().find(t);
  if (fixed != fixed_tails().end())
    return fixed->second;
  if (auto n = alkyl_length(t))
    return std::string(static_cast<std::size_t>(*n), 'C');

  static const std::pair<std::string_view, std::string_view> kPrefixes[] = {
    { "SO2", "S(=O)(=O)" }, { "CO2", "C(=O)O" }, { "COO", "C(=O)O" },
    { "CO", "C(=O)" },      { "CH2", "C" },      { "NH", "N" },
    { "O", "O" },           { "S", "S" },
  };
  for (auto [prefix, smiles]: kPrefixes) {
    if (t.size() <= prefix.size() || t.substr(0, prefix.size()) != prefix)
      continue;
    if (auto rest = linear_tail(t.substr(prefix.size()), depth + 1))
      return std::string(smiles) + *rest;
  }
  return std::nullopt;
}

Fragment fragment_from_tail(const std::string &tail) {
  return fragment_from_dummy(parse_smiles("*" + tail));
}

// "<locants>-<group>C6H<n>" with the group carrying a multiplier when more
// than one locant is given.
std::optional<Fragment> substituted_phenyl(std::string_view text) {
  static const std::regex kPattern(R"(([2-6](?:,[2-6])*)-(.+)C6H([0-5]))");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kPattern))
    return std::nullopt;

  std::vector<int> locants;
  for (char c: m[1].str())
    if (c != ',')
      locants.push_back(c - '0');
  std::vector<int> sorted = locants;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw FormulaError("repeated locant in '" + s + "'");
  int k = static_cast<int>(locants.size());
  if (std::stoi(m[3]) != 5 - k)
    throw FormulaError("hydrogen count does not match " + std::to_string(k)
                       + " substituents in '" + s + "'");

  std::string group = m[2];
  if (k > 1) {
    std::string mult = std::to_string(k);
    if (group.size() <= mult.size()
        || group.substr(group.size() - mult.size()) != mult)
      throw FormulaError("missing multiplier in '" + s + "'");
    group = group.substr(0, group.size() - mult.size());
  }
  if (group.size() > 2 && group.front() == '(' && group.back() == ')')
    group = group.substr(1, group.size() - 2);
  auto tail = linear_tail(group);
  if (!tail)
    throw FormulaError("unknown ring substituent '" + group + "'");
  Fragment sub = fragment_from_tail(*tail);

  MolecularGraph ring = parse_smiles("c1ccccc1");
  std::vector<Replacement> reps;
  for (int loc: locants) {
    int marker = ring.add_atom(AtomToken::wildcard());
    ring.add_bond(loc - 1, marker, BondOrder::kSingle);
    reps.push_back({ marker, sub });
  }
  Fragment out;
  out.graph = replace_atoms(ring, reps);
  out.attachment = 0;
  out.index_map.resize(out.graph.atoms.size());
  for (int i = 0; i < out.graph.atom_count(); ++i)
    out.index_map[i] = i;
  return out;
}

}  // namespace

Fragment parse_condensed_formula(std::string_view text) {
  if (text.empty())
    throw FormulaError("empty formula");
  if (auto phenyl = substituted_phenyl(text))
    return *phenyl;
  if (auto tail = linear_tail(text)) {
    Fragment f = fragment_from_tail(*tail);
    for (int i = 0; i < f.graph.atom_count(); ++i)
      f.index_map[i] = i;
    return f;
  }
  throw FormulaError("'" + std::string(text) + "' is not a condensed formula");
}

}  // namespace rxnscope
