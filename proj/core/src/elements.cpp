//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "elements.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace rxnscope::internal {
namespace {

constexpr std::array<std::string_view, 118> kSymbols {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

struct ValenceEntry {
  std::string_view symbol;
  std::array<int, 3> valences;
  int count;
};

// B3, C4, N3/5, O2, P3/5, S2/4/6, halogens 1, plus a few common extras.
constexpr std::array<ValenceEntry, 16> kValences { {
  { "H", { 1 }, 1 },
  { "B", { 3 }, 1 },
  { "C", { 4 }, 1 },
  { "N", { 3, 5 }, 2 },
  { "O", { 2 }, 1 },
  { "P", { 3, 5 }, 2 },
  { "S", { 2, 4, 6 }, 3 },
  { "F", { 1 }, 1 },
  { "Cl", { 1 }, 1 },
  { "Br", { 1 }, 1 },
  { "I", { 1 }, 1 },
  { "Si", { 4 }, 1 },
  { "Se", { 2, 4, 6 }, 3 },
  { "Li", { 1 }, 1 },
  { "Na", { 1 }, 1 },
  { "K", { 1 }, 1 },
} };

const ValenceEntry *find_valence(std::string_view symbol) {
  for (const auto &e: kValences)
    if (e.symbol == symbol)
      return &e;
  return nullptr;
}

}  // namespace

bool is_element_symbol(std::string_view symbol) {
  return std::find(kSymbols.begin(), kSymbols.end(), symbol) != kSymbols.end();
}

int atomic_number(std::string_view symbol) {
  auto it = std::find(kSymbols.begin(), kSymbols.end(), symbol);
  return it == kSymbols.end() ? 0 : static_cast<int>(it - kSymbols.begin()) + 1;
}

bool is_organic_subset(std::string_view symbol) {
  constexpr std::array<std::string_view, 10> kOrganic {
    "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I",
  };
  return std::find(kOrganic.begin(), kOrganic.end(), symbol) != kOrganic.end();
}

bool is_aromatic_capable(std::string_view symbol) {
  constexpr std::array<std::string_view, 8> kAromatic {
    "B", "C", "N", "O", "P", "S", "Se", "As",
  };
  return std::find(kAromatic.begin(), kAromatic.end(), symbol)
         != kAromatic.end();
}

std::span<const int> default_valences(std::string_view symbol) {
  const ValenceEntry *e = find_valence(symbol);
  if (e == nullptr)
    return {};
  return { e->valences.data(), static_cast<std::size_t>(e->count) };
}

std::optional<std::vector<int>> allowed_valences(std::string_view symbol,
                                                 int charge) {
  const ValenceEntry *e = find_valence(symbol);
  if (e == nullptr)
    return std::nullopt;

  std::vector<int> out;
  for (int i = 0; i < e->count; ++i) {
    int v = e->valences[i];
    // One unit of valence per unit of charge: cations of N/O/P/S/halogens
    // gain a bond, anions lose one; boron does the opposite and carbon
    // loses one either way. Alkali metals are valence 0 as ions.
    int adjusted;
    if (symbol == "C")
      adjusted = v - std::abs(charge);
    else if (symbol == "B")
      adjusted = v - charge;
    else if (symbol == "Li" || symbol == "Na" || symbol == "K" || symbol == "H")
      adjusted = v - std::abs(charge);
    else
      adjusted = v + charge;
    if (adjusted >= 0)
      out.push_back(adjusted);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rxnscope::internal
