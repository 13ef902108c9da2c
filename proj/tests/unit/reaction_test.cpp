//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include "rxnscope/error.hpp"
#include "rxnscope/reaction.hpp"
#include "rxnscope/smiles.hpp"

using namespace rxnscope;

namespace {

std::vector<ConditionItem> classify(std::string_view text) {
  return classify_condition(text, ConditionLexicon::defaults());
}

ConditionItem only(std::string_view text) {
  auto items = classify(text);
  REQUIRE(items.size() == 1);
  return items[0];
}

ReactionRecord record(std::string id, std::string product_label) {
  ReactionRecord r;
  r.reaction_id = std::move(id);
  r.reactants.push_back({ "CCC(=O)c1ccccc1", "1a" });
  r.products.push_back({ "CCC(C)=O", std::move(product_label) });
  return r;
}

}  // namespace

TEST_SUITE("reaction") {

TEST_CASE("classify_condition") {
  auto phme = only("PhMe");
  CHECK(phme.role == ConditionRole::kSolvent);
  CHECK(phme.smiles == "Cc1ccccc1");
  CHECK(only("rt").role == ConditionRole::kTemperature);
  CHECK(only("80 °C").role == ConditionRole::kTemperature);
  CHECK(only("38 - 78%").role == ConditionRole::kYield);
  CHECK(only("14:1 dr").role == ConditionRole::kAddInfo);
  CHECK(only("91% ee").role == ConditionRole::kAddInfo);
  CHECK(only("24 h").role == ConditionRole::kTime);
  auto cs = only("10 mol% Cs2CO3");
  CHECK(cs.role == ConditionRole::kReagent);
  CHECK(cs.text == "10 mol% Cs2CO3");
}

TEST_CASE("comma-separated condition strings") {
  auto items = classify("10 mol% Cs2CO3, PhMe, rt");
  REQUIRE(items.size() == 3);
  CHECK(items[0].role == ConditionRole::kReagent);
  CHECK(items[1].role == ConditionRole::kSolvent);
  CHECK(items[2].role == ConditionRole::kTemperature);
}

TEST_CASE("alternative catalysts become separately labelled reagents") {
  auto items = classify("10 mol% B17 or B27");
  REQUIRE(items.size() == 2);
  CHECK(items[0].label == "B17");
  CHECK(items[1].label == "B27");
  CHECK(items[0].role == ConditionRole::kReagent);
}

TEST_CASE("align_conditions") {
  std::vector<ConditionItem> shared = { only("PhMe"), only("rt") };
  SUBCASE("shared plus per-variant yield") {
    auto out = align_conditions(shared, { { "3a", { only("71%") } } },
                                { record("1_1", "3a") });
    REQUIRE(out.records.size() == 1);
    const auto &c = out.records[0].conditions;
    REQUIRE(c.size() == 3);
    CHECK(c[2].role == ConditionRole::kYield);
    CHECK(c[2].text == "71%");
    CHECK(out.residue.empty());
  }
  SUBCASE("no per-variant items") {
    auto out = align_conditions(shared, {},
                                { record("1_1", "3a"), record("2_1", "3b") });
    for (const auto &r: out.records)
      CHECK(r.conditions == shared);
  }
  SUBCASE("unmatched label lands in the residue") {
    auto out = align_conditions(shared, { { "9z", { only("50%") } } },
                                { record("1_1", "3a") });
    REQUIRE(out.residue.size() == 1);
    CHECK(out.residue[0].label == "9z");
    CHECK(out.records[0].conditions == shared);
  }
}

TEST_CASE("parse_rgroup_table") {
  const char *text
      = "entry\tR1\tR2\tR3\tR4\ttime (h)\tproduct\tyield (%)\n"
        "1\tPh\tH\tPh\t4-BrC6H4\t24\t3a\t78\n";
  auto rows = parse_rgroup_table(text);
  REQUIRE(rows.size() == 1);
  RGroupTableRow expected;
  expected.entry = 1;
  expected.values = { { "R1", "Ph" }, { "R2", "H" }, { "R3", "Ph" },
                      { "R4", "4-BrC6H4" } };
  expected.metadata = { { "time", "24" }, { "product", "3a" },
                        { "yield", "78" } };
  CHECK(rows[0] == expected);

  CHECK(parse_rgroup_table("entry\tR1\tR2\n").empty());

  auto dashed = parse_rgroup_table("entry\tR1\tR2\n1\tPh\t-\n");
  REQUIRE(dashed.size() == 1);
  CHECK(dashed[0].values.count("R1") == 1);
  CHECK(dashed[0].values.count("R2") == 0);

  auto spaced = parse_rgroup_table("entry  R1  R2\n2  Me  Et\n");
  REQUIRE(spaced.size() == 1);
  CHECK(spaced[0].entry == 2);
  CHECK(spaced[0].values.at("R2") == "Et");

  CHECK_THROWS_AS(parse_rgroup_table(""), TableParseError);
  CHECK_THROWS_AS(parse_rgroup_table("entry\tR1\n1\tPh\tMe\n"), TableParseError);
  CHECK_THROWS_AS(parse_rgroup_table("entry\tR1\nx\tPh\n"), TableParseError);
}

TEST_CASE("record codec") {
  SUBCASE("empty conditions") {
    ReactionDocument doc;
    doc.reactions.push_back(record("1_1", "3a"));
    std::string text = encode_document_text(doc);
    CHECK(text.find("\"conditions\": []") != std::string::npos);
    CHECK(decode_document_text(text) == doc);
  }
  SUBCASE("reaction 1_1 fragment") {
    const char *text = R"({"reactions": [{
      "reaction_id": "1_1",
      "reactants": [{"smiles": "CCC(=O)c1ccccc1", "label": "1a"},
                    {"smiles": "Clc1ccccc1C1ON1S(=O)(=O)c1ccc(C)cc1", "label": "2a"}],
      "conditions": [{"role": "solvent", "text": "PhMe", "smiles": "Cc1ccccc1"},
                     {"role": "yield", "text": "71%"}],
      "products": [{"smiles": "CC[C@]1(c2ccccc2)O[C@H](c2ccccc2Cl)N(S(=O)(=O)c2ccc(C)cc2)C1=O",
                    "label": "3a"}],
      "additional_info": [{"text": "14:1 dr, 91% ee"}]}]})";
    auto doc = decode_document_text(text);
    REQUIRE(doc.reactions.size() == 1);
    const auto &r = doc.reactions[0];
    CHECK(r.reactants.size() == 2);
    CHECK(r.conditions[1].role == ConditionRole::kYield);
    CHECK(r.conditions[1].text == "71%");
    CHECK(r.products[0].label == "3a");
    CHECK(r.additional_info == std::vector<std::string> { "14:1 dr, 91% ee" });
    CHECK(validate_records(doc.reactions).empty());
    CHECK(decode_document_text(encode_document_text(doc)) == doc);
  }
  SUBCASE("closed role enumeration") {
    const char *text = R"({"reactions": [{"reaction_id": "1",
      "reactants": [], "products": [],
      "conditions": [{"role": "flavor", "text": "x"}]}]})";
    try {
      decode_document_text(text);
      FAIL("expected DecodeError");
    } catch (const DecodeError &e) {
      CHECK(e.path() == "reactions[0].conditions[0].role");
    }
  }
  SUBCASE("malformed json") {
    CHECK_THROWS_AS(decode_document_text("{"), DecodeError);
  }
}

TEST_CASE("validate_records") {
  auto a = record("1_1", "3a");
  auto b = record("1_1", "3b");
  auto issues = validate_records({ a, b });
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "reactions[1].reaction_id");

  ReactionRecord empty;
  empty.reaction_id = "2_1";
  CHECK(validate_records({ empty }).size() == 2);

  ReactionRecord tmpl;
  tmpl.reaction_id = "0_1";
  tmpl.reactants.push_back({ "[Ar]C([R])=O", "1" });
  CHECK(validate_records({ tmpl }).empty());

  auto bad = record("3_1", "3c");
  bad.products[0].smiles = "C1CC";
  issues = validate_records({ bad });
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "reactions[0].products[0].smiles");
}

}  // TEST_SUITE
