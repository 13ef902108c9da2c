//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_RGROUP_HPP_
#define RXNSCOPE_RGROUP_HPP_

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rxnscope/chemops.hpp"
#include "rxnscope/molgraph.hpp"

namespace rxnscope {

/// A bound substituent: an explicit fragment or a token still to be expanded.
using Binding = std::variant<Fragment, std::string>;

struct RGroupAssignment {
  // Bracket-free label ("R1", "Ar") -> binding.
  std::map<std::string, Binding> bindings;

  void bind(std::string label, Binding b) {
    bindings.insert_or_assign(std::move(label), std::move(b));
  }
  bool contains(const std::string &label) const {
    return bindings.count(label) > 0;
  }
};

struct ReactionTemplate {
  std::vector<MolecularGraph> reactant_templates;
  std::vector<MolecularGraph> product_templates;
  std::set<std::string> placeholder_labels;

  static ReactionTemplate from_graphs(std::vector<MolecularGraph> reactants,
                                      std::vector<MolecularGraph> products);
};

/// Bracket-free labels of every placeholder atom in g.
std::set<std::string> placeholder_labels(const MolecularGraph &g);

/// Binding as a fragment, expanding tokens through table and aliases.
Fragment resolve_binding(const Binding &b, const AbbreviationTable &table,
                         AliasRegistry &aliases);

/// Binding written as "*"-anchored SMILES (tokens stay as text).
std::string binding_text(const Binding &b);

/// Replaces bound placeholders with their fragments; unbound placeholders
/// stay. Throws GraphError when a splice would duplicate a bond.
MolecularGraph substitute_placeholders(const MolecularGraph &g,
                                       const RGroupAssignment &a,
                                       const AbbreviationTable &table,
                                       AliasRegistry &aliases);
MolecularGraph substitute_placeholders(const MolecularGraph &g,
                                       const RGroupAssignment &a,
                                       const AbbreviationTable &table);

/// Substituents of a product variant relative to its template, keyed by
/// placeholder label. Alignment warnings are appended to `warnings` when
/// given. Throws TemplateMismatchError.
RGroupAssignment extract_rgroup_fragments(
    const MolecularGraph &product_template,
    const MolecularGraph &product_variant,
    std::vector<std::string> *warnings = nullptr);

/// One isomeric SMILES per reactant template, in template order. Throws
/// MissingBindingsError listing every unbound label.
std::vector<std::string> reconstruct_reactants(const ReactionTemplate &t,
                                               const RGroupAssignment &a,
                                               const AbbreviationTable &table,
                                               AliasRegistry &aliases);
std::vector<std::string> reconstruct_reactants(const ReactionTemplate &t,
                                               const RGroupAssignment &a,
                                               const AbbreviationTable &table);

}  // namespace rxnscope

#endif  // RXNSCOPE_RGROUP_HPP_
