//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <set>

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

using namespace rxnscope;

namespace {

int count_order(const MolecularGraph &g, BondOrder o) {
  int n = 0;
  for (const Bond &b: g.bonds)
    n += b.order == o;
  return n;
}

}  // namespace

TEST_SUITE("smiles") {

TEST_CASE("parse ethanol") {
  MolecularGraph g = parse_smiles("CCO");
  CHECK(g.atom_count() == 3);
  CHECK(g.bond_count() == 2);
  CHECK(count_order(g, BondOrder::kSingle) == 2);
}

TEST_CASE("parse toluene") {
  MolecularGraph g = parse_smiles("Cc1ccccc1");
  CHECK(g.atom_count() == 7);
  int aromatic = 0;
  for (const AtomToken &a: g.atoms)
    aromatic += a.aromatic;
  CHECK(aromatic == 6);
  CHECK(count_order(g, BondOrder::kAromatic) == 6);
}

TEST_CASE("parse errors carry an offset") {
  try {
    parse_smiles("C1CC");
    FAIL("expected a parse error");
  } catch (const SmilesParseError &e) {
    CHECK(e.kind() == "smiles_parse_error");
  }
  CHECK_THROWS_AS(parse_smiles(""), SmilesParseError);
  CHECK_THROWS_AS(parse_smiles("C(C"), SmilesParseError);
  CHECK_THROWS_AS(parse_smiles("C)C"), SmilesParseError);
  CHECK_THROWS_AS(parse_smiles("C=#C"), SmilesParseError);
  // Unknown bracket text is an abbreviation, not an error.
  CHECK(parse_smiles("[Xx]").atoms[0].kind == AtomKind::kAbbreviation);
  try {
    parse_smiles("CC(C");
  } catch (const SmilesParseError &e) {
    CHECK(e.offset() <= 4);
  }
}

TEST_CASE("placeholders, abbreviations and wildcards") {
  MolecularGraph g = parse_smiles("[Ar]C([R])=O");
  CHECK(g.atoms[0].kind == AtomKind::kPlaceholder);
  CHECK(g.atoms[0].text == "[Ar]");
  CHECK(g.atoms[2].kind == AtomKind::kPlaceholder);
  CHECK(parse_smiles("[Ph]C").atoms[0].kind == AtomKind::kAbbreviation);
  MolecularGraph w = parse_smiles("[13*]");
  CHECK(w.atoms[0].kind == AtomKind::kWildcard);
  CHECK(w.atoms[0].isotope == 13);
}

TEST_CASE("write_smiles") {
  SUBCASE("benzene round trip") {
    MolecularGraph back = parse_smiles(write_smiles(parse_smiles("c1ccccc1")));
    CHECK(back.atom_count() == 6);
    CHECK(count_order(back, BondOrder::kAromatic) == 6);
  }
  SUBCASE("template with placeholders") {
    MolecularGraph g;
    int ar = g.add_atom(AtomToken::placeholder("Ar"));
    int c = g.add_atom(AtomToken::element("C"));
    int r = g.add_atom(AtomToken::placeholder("R"));
    int o = g.add_atom(AtomToken::element("O"));
    g.add_bond(ar, c);
    g.add_bond(c, r);
    g.add_bond(c, o, BondOrder::kDouble);
    CHECK(canonicalize(write_smiles(g)) == canonicalize("[Ar]C([R])=O"));
  }
  SUBCASE("isotope-labelled wildcard") {
    MolecularGraph g;
    g.add_atom(AtomToken::wildcard(13));
    CHECK(write_smiles(g) == "[13*]");
  }
}

TEST_CASE("canonicalize is independent of atom order") {
  CHECK(canonicalize("OCC") == canonicalize("CCO"));
  CHECK(canonicalize("C(=O)(c1ccccc1)CC") == canonicalize("CCC(=O)c1ccccc1"));
  CHECK(canonicalize("N#CC(=Cc1ccc(Br)cc1)C(=O)c1ccccc1")
        == canonicalize("O=C(c1ccccc1)C(C#N)=Cc1ccc(Br)cc1"));
}

TEST_CASE("every benzene numbering writes the same string") {
  // Hand-enumerated: 6 starting atoms x 2 directions over a 6-cycle.
  std::set<std::string> out;
  for (int start = 0; start < 6; ++start)
    for (int dir: { 1, -1 }) {
      MolecularGraph g;
      for (int i = 0; i < 6; ++i)
        g.add_atom(AtomToken::element("C", true));
      for (int i = 0; i < 6; ++i) {
        int a = ((start + dir * i) % 6 + 6) % 6;
        int b = ((start + dir * (i + 1)) % 6 + 6) % 6;
        g.add_bond(a, b, BondOrder::kAromatic);
      }
      out.insert(canonical_smiles(g));
    }
  CHECK(out.size() == 1);
}

TEST_CASE("canonical stereo survives rewriting") {
  std::string a = canonicalize("N[C@@H](C)C(=O)O");
  std::string b = canonicalize("C[C@H](N)C(=O)O");
  CHECK(a == b);
  CHECK(a != canonicalize("N[C@H](C)C(=O)O"));
  CHECK(canonicalize("C/C=C/C") == canonicalize("C\\C=C\\C"));
  CHECK(canonicalize("C/C=C/C") != canonicalize("C/C=C\\C"));
  CHECK(canonicalize("N[C@@H](C)C(=O)O", false)
        == canonicalize("N[C@H](C)C(=O)O", false));
}

TEST_CASE("kekule and aromatic input agree") {
  CHECK(canonicalize("C1=CC=CC=C1") == canonicalize("c1ccccc1"));
  CHECK(canonicalize("CC1=CC=CC=C1") == canonicalize("Cc1ccccc1"));
}

TEST_CASE("is_valid") {
  CHECK(is_valid("CCC(=O)c1ccccc1"));
  CHECK_FALSE(is_valid("[Ar]C([R])=O"));
  CHECK_FALSE(is_valid("C(C)(C)(C)(C)C"));
  CHECK_FALSE(is_valid("C1CC"));
  CHECK(is_valid("[Cs+].[Cs+].[O-]C(=O)[O-]"));
  CHECK(is_valid("C[N+](=O)[O-]"));
}

TEST_CASE("fold_hydrogens removes plain explicit hydrogens") {
  MolecularGraph g = fold_hydrogens(parse_smiles("[H]C([H])([H])[H]"));
  CHECK(g.atom_count() == 1);
  CHECK(canonical_smiles(g) == "C");
}

TEST_CASE("ring bonds") {
  MolecularGraph g = parse_smiles("CC1CC1");
  auto ring = ring_bonds(g);
  int n = 0;
  for (bool r: ring)
    n += r;
  CHECK(n == 3);
  CHECK_FALSE(ring[0]);
}

}  // TEST_SUITE
