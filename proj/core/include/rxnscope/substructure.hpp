//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_SUBSTRUCTURE_HPP_
#define RXNSCOPE_SUBSTRUCTURE_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rxnscope/molgraph.hpp"

namespace rxnscope {

/// target[i] is the target atom that pattern atom i maps to.
struct AtomMapping {
  std::vector<int> target;

  bool operator==(const AtomMapping &) const = default;
  auto operator<=>(const AtomMapping &) const = default;
};

/// Whether pattern atom p may map onto target atom t. Placeholders match any
/// atom, except that aryl labels (Ar, Ar1, ...) require an aromatic target.
/// An unlabelled "*" also matches anything.
bool atoms_compatible(const AtomToken &p, const AtomToken &t);

/// Whether a pattern bond may map onto a target bond. Orders must be equal,
/// except that single and aromatic are interchangeable when either bond
/// touches a placeholder.
bool bonds_compatible(const MolecularGraph &pattern, const Bond &pb,
                      const MolecularGraph &target, const Bond &tb);

/// Checks a mapping edge by edge without any search.
bool verify_mapping(const MolecularGraph &pattern,
                    const MolecularGraph &target, const AtomMapping &m);

/// All subgraph monomorphisms of pattern into target in lexicographic order
/// of the mapped index tuple, truncated at limit.
std::vector<AtomMapping> find_matches(
    const MolecularGraph &pattern, const MolecularGraph &target,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

struct ScaffoldAlignment {
  AtomMapping mapping;
  // Placeholder template atom -> sorted variant atoms of its substituent.
  std::map<int, std::vector<int>> fragments;
  std::vector<std::string> warnings;
};

/// Best placeholder-anchored alignment of a template onto a variant: the
/// match whose scaffold image plus substituent sets cover the most variant
/// atoms, ties broken lexicographically. Throws TemplateMismatchError.
ScaffoldAlignment scaffold_align(const MolecularGraph &tmpl,
                                 const MolecularGraph &variant);

}  // namespace rxnscope

#endif  // RXNSCOPE_SUBSTRUCTURE_HPP_
