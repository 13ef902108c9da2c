//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <algorithm>

#include "rxnscope/error.hpp"
#include "rxnscope/molgraph.hpp"
#include "rxnscope/smiles.hpp"

using namespace rxnscope;

TEST_SUITE("molgraph") {

TEST_CASE("a lone carbon is a valid graph") {
  MolecularGraph g;
  g.add_atom(AtomToken::element("C"));
  CHECK(validate_graph(g).empty());
}

TEST_CASE("self loops and duplicate bonds are reported once each") {
  MolecularGraph g;
  g.add_atom(AtomToken::element("C"));
  g.add_atom(AtomToken::element("C"));
  g.bonds.push_back({ .a = 0, .b = 0 });
  auto v = validate_graph(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "self_loop");
  CHECK(v[0].bond == 0);

  g.bonds.clear();
  g.bonds.push_back({ .a = 0, .b = 1 });
  g.bonds.push_back({ .a = 1, .b = 0 });
  v = validate_graph(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "duplicate_bond");
}

TEST_CASE("wedges only on single bonds") {
  MolecularGraph g = parse_smiles("C=C");
  g.bonds[0].wedge = Wedge::kSolid;
  CHECK_FALSE(validate_graph(g).empty());
}

TEST_CASE("placeholder grammar") {
  CHECK(is_placeholder_label("R1"));
  CHECK(is_placeholder_label("Ar2"));
  CHECK(is_placeholder_label("R"));
  CHECK_FALSE(is_placeholder_label("1R"));
  CHECK_FALSE(is_placeholder_label("Me"));
  CHECK_FALSE(is_placeholder_label(""));
  CHECK(placeholder_label(AtomToken::placeholder("Ar2")) == "Ar2");
}

TEST_CASE("main_component") {
  SUBCASE("single component is returned unchanged") {
    MolecularGraph g = parse_smiles("CCO");
    auto m = main_component(g);
    CHECK(m.graph == g);
  }
  SUBCASE("largest heavy-atom component wins") {
    // Six ring carbons against one sodium.
    auto m = main_component(parse_smiles("[Na+].c1ccccc1"));
    CHECK(m.graph.atom_count() == 6);
    CHECK(std::all_of(m.graph.atoms.begin(), m.graph.atoms.end(),
                      [](const AtomToken &a) { return a.text == "C"; }));
    CHECK(m.index_map.front() == 1);
  }
  SUBCASE("ties keep the component of atom 0") {
    auto m = main_component(parse_smiles("C.N"));
    REQUIRE(m.graph.atom_count() == 1);
    CHECK(m.graph.atoms[0].text == "C");
    CHECK(m.index_map == std::vector<int> { 0 });
  }
}

TEST_CASE("induced_fragment") {
  MolecularGraph g = parse_smiles("CCC(=O)c1ccccc1");
  SUBCASE("ethyl of propiophenone") {
    std::vector<int> set { 0, 1 };
    Fragment f = induced_fragment(g, set, 1);
    CHECK(f.graph.atom_count() == 2);
    CHECK(f.graph.bond_count() == 1);
    CHECK(f.index_map[f.attachment] == 1);
  }
  SUBCASE("whole graph") {
    std::vector<int> all(g.atoms.size());
    for (int i = 0; i < g.atom_count(); ++i)
      all[i] = i;
    Fragment f = induced_fragment(g, all, 0);
    CHECK(f.graph.atom_count() == g.atom_count());
    CHECK(f.graph.bond_count() == g.bond_count());
    CHECK(f.attachment == 0);
  }
  SUBCASE("singleton") {
    std::vector<int> one { 3 };
    Fragment f = induced_fragment(g, one, 3);
    CHECK(f.graph.atom_count() == 1);
    CHECK(f.graph.atoms[0].text == "O");
  }
  SUBCASE("attachment outside the set") {
    std::vector<int> set { 0, 1 };
    CHECK_THROWS_AS(induced_fragment(g, set, 4), GraphError);
  }
}

TEST_CASE("replace_atoms splices a fragment at the placeholder") {
  MolecularGraph t = parse_smiles("[R]C=O");
  Fragment ethyl = fragment_from_dummy(parse_smiles("*CC"));
  std::vector<Replacement> reps { { 0, ethyl } };
  CHECK(canonical_smiles(replace_atoms(t, reps)) == canonicalize("CCC=O"));
}

TEST_CASE("permute_atoms preserves the canonical form") {
  MolecularGraph g = parse_smiles("OCC(=O)N");
  std::vector<int> perm { 4, 2, 0, 1, 3 };
  CHECK(canonical_smiles(permute_atoms(g, perm)) == canonical_smiles(g));
}

TEST_CASE("graph json round trip") {
  for (const char *s: { "CC[C@H](O)c1ccccc1", "[Ar]C([R])=O", "C/C=C/C",
                        "[13*]CC", "[Ts]N1OC1" }) {
    CAPTURE(s);
    MolecularGraph g = parse_smiles(s);
    MolecularGraph back = graph_from_json(graph_to_json(g));
    CHECK(canonical_smiles(back) == canonical_smiles(g));
  }
}

TEST_CASE("abbreviations that collide with element symbols survive json") {
  MolecularGraph g = parse_smiles("[Ts]NC");
  REQUIRE(g.atoms[0].kind == AtomKind::kAbbreviation);
  MolecularGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.atoms[0].kind == AtomKind::kAbbreviation);
  CHECK(back.atoms[0].text == "Ts");
}

TEST_CASE("hydrogen counts") {
  MolecularGraph g = parse_smiles("CC=O");
  Adjacency adj(g);
  CHECK(implicit_hydrogens(g, adj, 0) == 3);
  CHECK(implicit_hydrogens(g, adj, 1) == 1);
  CHECK(implicit_hydrogens(g, adj, 2) == 0);
  CHECK(bond_valence(g, adj, 1) == 3);
}

}  // TEST_SUITE
