//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/rgroup.hpp"

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"
#include "rxnscope/substructure.hpp"

namespace rxnscope {
namespace {

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const std::string &s: items) {
    if (!out.empty())
      out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

MissingBindingsError::MissingBindingsError(std::vector<std::string> labels)
    : Error("missing_bindings", "no binding for " + join(labels)),
      labels_(std::move(labels)) { }

std::set<std::string> placeholder_labels(const MolecularGraph &g) {
  std::set<std::string> out;
  for (const AtomToken &a: g.atoms)
    if (a.is_placeholder())
      out.insert(placeholder_label(a));
  return out;
}

ReactionTemplate ReactionTemplate::from_graphs(
    std::vector<MolecularGraph> reactants,
    std::vector<MolecularGraph> products) {
  ReactionTemplate t;
  t.reactant_templates = std::move(reactants);
  t.product_templates = std::move(products);
  for (const auto *list: { &t.reactant_templates, &t.product_templates })
    for (const MolecularGraph &g: *list)
      for (const std::string &l: rxnscope::placeholder_labels(g))
        t.placeholder_labels.insert(l);
  return t;
}

Fragment resolve_binding(const Binding &b, const AbbreviationTable &table,
                         AliasRegistry &aliases) {
  if (const Fragment *f = std::get_if<Fragment>(&b))
    return *f;
  return expand_abbreviation(std::get<std::string>(b), table, aliases)
      .fragment;
}

std::string binding_text(const Binding &b) {
  if (const Fragment *f = std::get_if<Fragment>(&b))
    return write_smiles(fragment_with_dummy(*f));
  return std::get<std::string>(b);
}

MolecularGraph substitute_placeholders(const MolecularGraph &g,
                                       const RGroupAssignment &a,
                                       const AbbreviationTable &table,
                                       AliasRegistry &aliases) {
  std::vector<Replacement> reps;
  for (int i = 0; i < g.atom_count(); ++i) {
    if (!g.atoms[i].is_placeholder())
      continue;
    auto it = a.bindings.find(placeholder_label(g.atoms[i]));
    if (it == a.bindings.end())
      continue;
    reps.push_back({ i, resolve_binding(it->second, table, aliases) });
  }
  if (reps.empty())
    return g;
  return replace_atoms(g, reps);
}

MolecularGraph substitute_placeholders(const MolecularGraph &g,
                                       const RGroupAssignment &a,
                                       const AbbreviationTable &table) {
  AliasRegistry aliases;
  return substitute_placeholders(g, a, table, aliases);
}

RGroupAssignment extract_rgroup_fragments(
    const MolecularGraph &product_template,
    const MolecularGraph &product_variant, std::vector<std::string> *warnings) {
  ScaffoldAlignment al = scaffold_align(product_template, product_variant);
  if (warnings)
    warnings->insert(warnings->end(), al.warnings.begin(), al.warnings.end());

  RGroupAssignment out;
  std::map<std::string, std::string> seen;
  for (const auto &[p, atoms]: al.fragments) {
    std::string label = placeholder_label(product_template.atoms[p]);
    Fragment f = induced_fragment(product_variant, atoms, al.mapping.target[p]);
    std::string key = canonical_smiles(fragment_with_dummy(f));
    auto prev = seen.find(label);
    if (prev != seen.end()) {
      if (prev->second != key && warnings)
        warnings->push_back("placeholder " + label
                            + " occurs more than once with different "
                              "substituents; kept the first");
      continue;
    }
    seen.emplace(label, key);
    out.bind(label, std::move(f));
  }
  return out;
}

std::vector<std::string> reconstruct_reactants(const ReactionTemplate &t,
                                               const RGroupAssignment &a,
                                               const AbbreviationTable &table,
                                               AliasRegistry &aliases) {
  std::set<std::string> missing;
  for (const MolecularGraph &g: t.reactant_templates)
    for (const std::string &l: placeholder_labels(g))
      if (!a.contains(l))
        missing.insert(l);
  if (!missing.empty())
    throw MissingBindingsError({ missing.begin(), missing.end() });

  std::vector<std::string> out;
  for (const MolecularGraph &g: t.reactant_templates) {
    MolecularGraph full = substitute_placeholders(g, a, table, aliases);
    auto problems = validate_graph(full);
    if (!problems.empty())
      throw GraphError("reconstructed reactant is invalid: "
                       + problems.front().message);
    out.push_back(write_smiles(main_component(full).graph));
  }
  return out;
}

std::vector<std::string> reconstruct_reactants(const ReactionTemplate &t,
                                               const RGroupAssignment &a,
                                               const AbbreviationTable &table) {
  AliasRegistry aliases;
  return reconstruct_reactants(t, a, table, aliases);
}

}  // namespace rxnscope
