//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <algorithm>
#include <set>

#include "rxnscope/smiles.hpp"
#include "rxnscope/substructure.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rxnscope;
using namespace rxnscope::testing;

TEST_SUITE("substructure") {

TEST_CASE("find_matches equals brute-force enumeration") {
  std::mt19937_64 rng(kSeed);
  int nonempty = 0;
  for (int k = 0; k < 100; ++k) {
    MolecularGraph target = random_graph(rng, 1, 10);
    MolecularGraph pattern = random_pattern(rng, target);
    std::vector<std::vector<int>> found;
    for (const AtomMapping &m: find_matches(pattern, target))
      found.push_back(m.target);
    std::sort(found.begin(), found.end());
    auto oracle = brute_force_matches(pattern, target);
    std::sort(oracle.begin(), oracle.end());
    if (found != oracle) {
      CAPTURE(k);
      CAPTURE(write_smiles(pattern));
      CAPTURE(write_smiles(target));
      CHECK(found.size() == oracle.size());
      CHECK(found == oracle);
    }
    nonempty += !oracle.empty();
  }
  // The generator must exercise both outcomes.
  CHECK(nonempty > 20);
  CHECK(nonempty < 100);
}

TEST_CASE("every returned mapping verifies") {
  std::mt19937_64 rng(kSeed + 1);
  for (int k = 0; k < 100; ++k) {
    MolecularGraph target = random_graph(rng, 1, 10);
    MolecularGraph pattern = random_pattern(rng, target);
    for (const AtomMapping &m: find_matches(pattern, target, 50)) {
      CHECK(verify_mapping(pattern, target, m));
      std::set<int> distinct(m.target.begin(), m.target.end());
      CHECK(distinct.size() == m.target.size());
    }
  }
}

TEST_CASE("scaffold fragments are disjoint from each other and the scaffold") {
  std::mt19937_64 rng(kSeed + 2);
  for (int k = 0; k < 100; ++k) {
    InverseCase c = random_inverse_case(rng);
    MolecularGraph tmpl = parse_smiles(c.template_smiles);
    std::vector<Replacement> reps;
    for (int i = 0; i < tmpl.atom_count(); ++i)
      if (tmpl.atoms[i].is_placeholder())
        reps.push_back({ i, fragment_from_dummy(parse_smiles(
                                c.fragments.at(placeholder_label(tmpl.atoms[i])))) });
    MolecularGraph variant = replace_atoms(tmpl, reps);
    ScaffoldAlignment a = scaffold_align(tmpl, variant);
    std::set<int> used;
    for (int i = 0; i < tmpl.atom_count(); ++i)
      if (!tmpl.atoms[i].is_placeholder())
        CHECK(used.insert(a.mapping.target[i]).second);
    for (const auto &[atom, frag]: a.fragments)
      for (int v: frag)
        CHECK(used.insert(v).second);
    CHECK(static_cast<int>(used.size()) == variant.atom_count());
  }
}

}  // TEST_SUITE
