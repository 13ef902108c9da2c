//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include "rxnscope/error.hpp"
#include "rxnscope/rgroup.hpp"
#include "rxnscope/smiles.hpp"

using namespace rxnscope;

namespace {

const AbbreviationTable &table() { return AbbreviationTable::defaults(); }

std::string substituted(const std::string &tmpl,
                        std::initializer_list<std::pair<const char *, const char *>>
                            tokens) {
  RGroupAssignment a;
  for (auto [label, token]: tokens)
    a.bind(label, std::string(token));
  return canonical_smiles(substitute_placeholders(parse_smiles(tmpl), a, table()));
}

std::string binding_smiles(const RGroupAssignment &a, const std::string &label) {
  AliasRegistry aliases;
  return canonical_smiles(
      fragment_with_dummy(resolve_binding(a.bindings.at(label), table(), aliases)));
}

const char *kFig2Product
    = "[Ar]C1([R])O[C@H](c2ccccc2Cl)N(S(=O)(=O)c2ccc(C)cc2)C1=O";

}  // namespace

TEST_SUITE("rgroup") {

TEST_CASE("placeholder_labels strips brackets") {
  auto labels = placeholder_labels(parse_smiles("[R1]C#CC(=O)C[R2]"));
  CHECK(labels == std::set<std::string> { "R1", "R2" });
}

TEST_CASE("substitute_placeholders") {
  CHECK(substituted("[R1]C#CC(=O)C[R2]", { { "R1", "Ph" }, { "R2", "H" } })
        == canonicalize("[H]CC(=O)C#Cc1ccccc1"));
  CHECK(canonicalize(substituted("[R3]C(=O)/C(C#N)=C/[R4]",
                                 { { "R3", "Ph" }, { "R4", "4-BrC6H4" } }),
                     false)
        == canonicalize("N#CC(=Cc1ccc(Br)cc1)C(=O)c1ccccc1", false));
  CHECK(substituted("[R1]C#CC(=O)C[R2]", {})
        == canonicalize("[R1]C#CC(=O)C[R2]"));
}

TEST_CASE("slash marks next to a placeholder keep the double-bond geometry") {
  // With slashes, the substituted product carries E/Z.
  std::string s = substituted("[R3]C(=O)/C(C#N)=C/[R4]",
                              { { "R3", "Ph" }, { "R4", "4-BrC6H4" } });
  CHECK(s == canonicalize("O=C(c1ccccc1)/C(C#N)=C/c1ccc(Br)cc1"));
}

TEST_CASE("extract_rgroup_fragments") {
  MolecularGraph tmpl = parse_smiles(kFig2Product);
  SUBCASE("3a") {
    auto a = extract_rgroup_fragments(
        tmpl, parse_smiles("CC[C@]1(c2ccccc2)O[C@H](c2ccccc2Cl)"
                           "N(S(=O)(=O)c2ccc(C)cc2)C1=O"));
    REQUIRE(a.bindings.size() == 2);
    CHECK(binding_smiles(a, "R") == canonicalize("*CC"));
    CHECK(binding_smiles(a, "Ar") == canonicalize("*c1ccccc1"));
  }
  SUBCASE("3b") {
    auto a = extract_rgroup_fragments(
        tmpl, parse_smiles("CCC[C@]1(c2ccccc2)O[C@H](c2ccccc2Cl)"
                           "N(S(=O)(=O)c2ccc(C)cc2)C1=O"));
    CHECK(binding_smiles(a, "R") == canonicalize("*CCC"));
    CHECK(binding_smiles(a, "Ar") == canonicalize("*c1ccccc1"));
  }
  SUBCASE("methyl everywhere") {
    MolecularGraph t = parse_smiles("[R1]C(=O)N[R2]");
    auto a = extract_rgroup_fragments(t, parse_smiles("CC(=O)NC"));
    REQUIRE(a.bindings.size() == 2);
    CHECK(binding_smiles(a, "R1") == canonicalize("*C"));
    CHECK(binding_smiles(a, "R2") == canonicalize("*C"));
  }
  SUBCASE("no match") {
    CHECK_THROWS_AS(extract_rgroup_fragments(tmpl, parse_smiles("CCO")),
                    TemplateMismatchError);
  }
}

TEST_CASE("reconstruct_reactants") {
  auto t = ReactionTemplate::from_graphs({ parse_smiles("[Ar]C([R])=O") },
                                         { parse_smiles(kFig2Product) });
  CHECK(t.placeholder_labels == std::set<std::string> { "Ar", "R" });

  RGroupAssignment a;
  a.bind("Ar", std::string("Ph"));
  a.bind("R", std::string("Et"));
  auto r = reconstruct_reactants(t, a, table());
  REQUIRE(r.size() == 1);
  CHECK(canonicalize(r[0]) == canonicalize("CCC(=O)c1ccccc1"));

  a.bind("R", std::string("nPr"));
  CHECK(canonicalize(reconstruct_reactants(t, a, table())[0])
        == canonicalize("CCCC(=O)c1ccccc1"));

  RGroupAssignment missing;
  missing.bind("R", std::string("Et"));
  try {
    reconstruct_reactants(t, missing, table());
    FAIL("expected MissingBindingsError");
  } catch (const MissingBindingsError &e) {
    CHECK(e.labels() == std::vector<std::string> { "Ar" });
    CHECK(std::string(e.what()).find("Ar") != std::string::npos);
  }
}

TEST_CASE("extract then reconstruct") {
  auto t = ReactionTemplate::from_graphs({ parse_smiles("[Ar]C([R])=O") },
                                         { parse_smiles(kFig2Product) });
  auto a = extract_rgroup_fragments(
      t.product_templates[0],
      parse_smiles("CC[C@]1(c2ccccc2)O[C@H](c2ccccc2Cl)"
                   "N(S(=O)(=O)c2ccc(C)cc2)C1=O"));
  CHECK(canonicalize(reconstruct_reactants(t, a, table())[0])
        == canonicalize("CCC(=O)c1ccccc1"));
}

TEST_CASE("binding_text") {
  CHECK(binding_text(Binding { std::string("Ph") }) == "Ph");
  Fragment f = fragment_from_dummy(parse_smiles("*CC"));
  CHECK(canonicalize(binding_text(Binding { f })) == canonicalize("*CC"));
}

}  // TEST_SUITE
