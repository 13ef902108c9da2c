//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <algorithm>

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"
#include "rxnscope/substructure.hpp"
#include "support/oracles.hpp"

using namespace rxnscope;

namespace {

std::vector<std::vector<int>> as_vectors(const std::vector<AtomMapping> &ms) {
  std::vector<std::vector<int>> out;
  for (const AtomMapping &m: ms)
    out.push_back(m.target);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("substructure") {

TEST_CASE("benzene on benzene has twelve automorphisms") {
  MolecularGraph b = parse_smiles("c1ccccc1");
  auto found = as_vectors(find_matches(b, b));
  auto oracle = testing::brute_force_matches(b, b);
  std::sort(oracle.begin(), oracle.end());
  CHECK(found.size() == 12);
  CHECK(found == oracle);
}

TEST_CASE("one carbonyl in propiophenone") {
  MolecularGraph p = parse_smiles("C=O");
  MolecularGraph t = parse_smiles("CCC(=O)c1ccccc1");
  auto found = as_vectors(find_matches(p, t));
  auto oracle = testing::brute_force_matches(p, t);
  std::sort(oracle.begin(), oracle.end());
  REQUIRE(found.size() == 1);
  CHECK(found == oracle);
  CHECK(found[0] == std::vector<int> { 2, 3 });
}

TEST_CASE("template placeholders map onto substituent roots") {
  MolecularGraph p = parse_smiles("[Ar]C([R])=O");
  MolecularGraph t = parse_smiles("CCC(=O)c1ccccc1");
  auto ms = find_matches(p, t);
  REQUIRE(ms.size() == 1);
  const auto &m = ms[0].target;
  CHECK(t.atoms[m[0]].aromatic);  // [Ar] -> ring carbon
  CHECK(m[0] == 4);
  CHECK(m[1] == 2);               // C -> carbonyl carbon
  CHECK(m[2] == 1);               // [R] -> ethyl CH2
  CHECK(m[3] == 3);               // O
  CHECK(verify_mapping(p, t, ms[0]));
}

TEST_CASE("limit caps the result") {
  MolecularGraph b = parse_smiles("c1ccccc1");
  CHECK(find_matches(b, b, 3).size() == 3);
  CHECK(find_matches(b, b, 0).empty());
}

TEST_CASE("atom compatibility") {
  CHECK(atoms_compatible(AtomToken::placeholder("R"), AtomToken::element("N")));
  CHECK(atoms_compatible(AtomToken::placeholder("Ar"),
                         AtomToken::element("C", true)));
  CHECK_FALSE(atoms_compatible(AtomToken::placeholder("Ar"),
                               AtomToken::element("C")));
  CHECK_FALSE(atoms_compatible(AtomToken::element("C"),
                               AtomToken::element("N")));
  CHECK_FALSE(atoms_compatible(AtomToken::element("C"),
                               AtomToken::element("C", true)));
}

TEST_CASE("verify_mapping rejects a non-injective map") {
  MolecularGraph p = parse_smiles("CC");
  MolecularGraph t = parse_smiles("CC");
  CHECK_FALSE(verify_mapping(p, t, AtomMapping { { 0, 0 } }));
  CHECK(verify_mapping(p, t, AtomMapping { { 1, 0 } }));
}

TEST_CASE("scaffold_align") {
  CHECK_THROWS_AS(scaffold_align(parse_smiles("CC=O"), parse_smiles("CCC=O")),
                  TemplateMismatchError);
  MolecularGraph tmpl = parse_smiles("[Ar]C([R])=O");
  SUBCASE("single-carbon substituents") {
    MolecularGraph v = parse_smiles("CC(C)=O");
    // Ar cannot map to a saturated carbon.
    CHECK_THROWS_AS(scaffold_align(tmpl, v), TemplateMismatchError);
    MolecularGraph t2 = parse_smiles("[R1]C([R])=O");
    auto b = scaffold_align(t2, v);
    REQUIRE(b.fragments.size() == 2);
    for (const auto &[atom, frag]: b.fragments)
      CHECK(frag.size() == 1);
  }
  SUBCASE("3a pair: ethyl and phenyl") {
    auto a = scaffold_align(tmpl, parse_smiles("CCC(=O)c1ccccc1"));
    REQUIRE(a.fragments.size() == 2);
    CHECK(a.fragments.at(0).size() == 6);
    CHECK(a.fragments.at(2).size() == 2);
  }
  SUBCASE("3b pair: n-propyl") {
    auto a = scaffold_align(tmpl, parse_smiles("CCCC(=O)c1ccccc1"));
    REQUIRE(a.fragments.count(2));
    CHECK(a.fragments.at(2).size() == 3);
  }
}

}  // TEST_SUITE
