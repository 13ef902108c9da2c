//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_SRC_SMILES_INTERNAL_HPP_
#define RXNSCOPE_SRC_SMILES_INTERNAL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rxnscope/molgraph.hpp"

namespace rxnscope::internal {

/// Parses the inside of a bracket atom ("13CH3+", "C@@H", "R1", "Ts").
/// Chirality is stored on the token with empty stereo_refs; the hydrogen
/// count lands in explicit_h for element atoms. `offset` is only used for
/// error positions.
AtomToken parse_bracket_atom(std::string_view content, std::size_t offset);

/// Text of an atom as it appears in SMILES, with or without brackets.
std::string format_atom(const AtomToken &atom, int hydrogens,
                        Chirality chirality, bool organic_ok);

/// True if the atom can be written without brackets given its hydrogen
/// count.
bool writable_unbracketed(const MolecularGraph &g, const Adjacency &adj,
                          int atom);

/// Bond valence with the aromatic extra unit dropped for pyrrole-type
/// heteroatoms whose total would otherwise exceed the lowest valence.
int effective_valence(const MolecularGraph &g, const Adjacency &adj, int atom,
                      int hydrogens);

/// Hydrogen count implied by the default valence model, ignoring explicit_h.
int default_hydrogens(const MolecularGraph &g, const Adjacency &adj, int atom);

/// Parity of the permutation taking `from` to `to`: 0 even, 1 odd, -1 when
/// the lists are not permutations of each other.
int permutation_parity(std::span<const int> from, std::span<const int> to);

inline Chirality flip(Chirality c) {
  switch (c) {
  case Chirality::kCcw: return Chirality::kCw;
  case Chirality::kCw: return Chirality::kCcw;
  default: return c;
  }
}

/// Chirality re-expressed against a new reference order.
Chirality reorder_chirality(Chirality c, std::span<const int> refs,
                            std::span<const int> order);

/// Writes g visiting atoms by ascending rank (DFS from the lowest rank in
/// each component, neighbors in rank order).
std::string write_ranked(const MolecularGraph &g, std::span<const int> rank,
                         bool isomeric);

}  // namespace rxnscope::internal

#endif  // RXNSCOPE_SRC_SMILES_INTERNAL_HPP_
