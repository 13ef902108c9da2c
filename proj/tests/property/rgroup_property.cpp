//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include "rxnscope/rgroup.hpp"
#include "rxnscope/smiles.hpp"
#include "support/generators.hpp"

using namespace rxnscope;
using namespace rxnscope::testing;

namespace {

RGroupAssignment assignment_of(const InverseCase &c) {
  RGroupAssignment a;
  for (const auto &[label, smiles]: c.fragments)
    a.bind(label, fragment_from_dummy(parse_smiles(smiles)));
  return a;
}

// One halide reactant per placeholder: "[R1]Br", "[Ar]Br", ...
ReactionTemplate template_of(const InverseCase &c) {
  std::vector<MolecularGraph> reactants;
  for (const auto &[label, smiles]: c.fragments)
    reactants.push_back(parse_smiles("[" + label + "]Br"));
  return ReactionTemplate::from_graphs(std::move(reactants),
                                       { parse_smiles(c.template_smiles) });
}

}  // namespace

TEST_SUITE("rgroup") {

TEST_CASE("extract inverts substitute") {
  std::mt19937_64 rng(kSeed);
  const auto &table = AbbreviationTable::defaults();
  int failures = 0;
  for (int k = 0; k < 200; ++k) {
    InverseCase c = random_inverse_case(rng);
    RGroupAssignment a = assignment_of(c);
    ReactionTemplate t = template_of(c);
    const MolecularGraph &product = t.product_templates[0];
    MolecularGraph variant = substitute_placeholders(product, a, table);

    bool ok = true;
    RGroupAssignment back;
    try {
      back = extract_rgroup_fragments(product, variant);
    } catch (const std::exception &e) {
      MESSAGE(c.template_smiles << ": " << e.what());
      ++failures;
      continue;
    }
    for (const auto &[label, smiles]: c.fragments) {
      if (!back.contains(label)) {
        ok = false;
        continue;
      }
      AliasRegistry aliases;
      std::string got = canonical_smiles(fragment_with_dummy(
          resolve_binding(back.bindings.at(label), table, aliases)));
      if (got != canonicalize(smiles)) {
        MESSAGE(c.template_smiles << " " << label << ": " << got << " vs "
                                  << smiles);
        ok = false;
      }
    }
    auto expected = reconstruct_reactants(t, a, table);
    auto rebuilt = reconstruct_reactants(t, back, table);
    REQUIRE(expected.size() == rebuilt.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      ok = ok && canonicalize(expected[i]) == canonicalize(rebuilt[i]);
    failures += !ok;
  }
  CHECK(failures == 0);
}

TEST_CASE("substitution preserves atom counts") {
  std::mt19937_64 rng(kSeed + 1);
  for (int k = 0; k < 100; ++k) {
    InverseCase c = random_inverse_case(rng);
    MolecularGraph g = parse_smiles(c.template_smiles);
    RGroupAssignment a = assignment_of(c);
    int replaced = 0;
    int added = 0;
    for (const AtomToken &atom: g.atoms)
      if (atom.is_placeholder()) {
        ++replaced;
        added += std::get<Fragment>(a.bindings.at(placeholder_label(atom)))
                     .graph.atom_count();
      }
    MolecularGraph out = substitute_placeholders(g, a, AbbreviationTable::defaults());
    CHECK(out.atom_count() == g.atom_count() - replaced + added);
    CHECK(placeholder_labels(out).empty());
  }
}

TEST_CASE("reconstructed reactants are placeholder-free") {
  std::mt19937_64 rng(kSeed + 2);
  for (int k = 0; k < 50; ++k) {
    InverseCase c = random_inverse_case(rng);
    auto out = reconstruct_reactants(template_of(c), assignment_of(c),
                                     AbbreviationTable::defaults());
    for (const std::string &s: out) {
      CAPTURE(s);
      CHECK(is_valid(s));
    }
  }
}

}  // TEST_SUITE
