//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_SMILES_HPP_
#define RXNSCOPE_SMILES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "rxnscope/molgraph.hpp"

namespace rxnscope {

/// Parses a SMILES string. Bracketed tokens that are not element atoms become
/// placeholders ([R1], [Ar2]) or abbreviations ([Ts], [4-BrC6H4]). Kekulé
/// six-membered carbocycles and azines are perceived as aromatic. Throws
/// SmilesParseError.
MolecularGraph parse_smiles(std::string_view s);

/// Writes g in atom index order. With isomeric=false all stereo is omitted.
std::string write_smiles(const MolecularGraph &g, bool isomeric = true);

/// Canonical form of a graph: explicit hydrogens folded into their
/// neighbors, unresolvable stereo dropped, components sorted.
std::string canonical_smiles(const MolecularGraph &g, bool isomeric = true);

/// canonical_smiles(parse_smiles(s)).
std::string canonicalize(std::string_view s, bool isomeric = true);

/// True iff s parses, contains only element atoms and every element with a
/// tabulated valence sits in an allowed state.
bool is_valid(std::string_view s);
bool is_valid(const MolecularGraph &g);

/// Graph-symmetry classes ignoring stereo: atoms with equal values are
/// topologically indistinguishable by iterative neighborhood refinement.
/// Values are dense ranks starting at 0.
std::vector<int> symmetry_classes(const MolecularGraph &g);

/// Total canonical order: rank[i] is the output position of atom i.
std::vector<int> canonical_ranks(const MolecularGraph &g);

/// Removes plain hydrogen atoms (no charge, no isotope, one neighbor) and adds
/// them to the neighbor's hydrogen count. Stereo references move to
/// kImplicitHydrogen.
MolecularGraph fold_hydrogens(const MolecularGraph &g);

/// Marks Kekulé six-rings of C/N in which every atom carries one in-ring
/// double bond (or is already aromatic) as aromatic. Iterates to a fixpoint
/// so fused systems resolve.
void perceive_aromaticity(MolecularGraph &g);

/// Bonds that lie on at least one cycle.
std::vector<bool> ring_bonds(const MolecularGraph &g);

}  // namespace rxnscope

#endif  // RXNSCOPE_SMILES_HPP_
