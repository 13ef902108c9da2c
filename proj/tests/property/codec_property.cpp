//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <doctest.h>

#include <set>
#include <tuple>

#include "rxnscope/reaction.hpp"
#include "support/generators.hpp"

using namespace rxnscope;
using namespace rxnscope::testing;

namespace {

const std::vector<std::string> kConditionText = {
  "PhMe", "rt", "38 - 78%", "14:1 dr", "91% ee", "10 mol% Cs2CO3", "THF",
  "80 °C", "24 h", "1.5 equiv NBS", "under N2", "71%", "-78 °C", "12 h",
};

std::string random_text(std::mt19937_64 &rng) {
  static const std::string kAlphabet = "abcXYZ 09%:-,\"\\/";
  std::string s;
  int n = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i)
    s += kAlphabet[rng() % kAlphabet.size()];
  return s;
}

ReactionRecord random_record(std::mt19937_64 &rng, int id) {
  const auto &corpus = molecule_corpus();
  ReactionRecord r;
  r.reaction_id = std::to_string(id) + "_1";
  int nr = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < nr; ++i)
    r.reactants.push_back(
        { corpus[rng() % corpus.size()],
          rng() % 2 ? std::optional<std::string>(std::to_string(id) + "a")
                    : std::nullopt });
  r.products.push_back({ corpus[rng() % corpus.size()], std::nullopt });
  int nc = static_cast<int>(rng() % 4);
  for (int i = 0; i < nc; ++i) {
    ConditionItem c;
    c.role = static_cast<ConditionRole>(rng() % 6);
    c.text = rng() % 3 ? kConditionText[rng() % kConditionText.size()]
                       : random_text(rng);
    if (rng() % 4 == 0)
      c.smiles = corpus[rng() % corpus.size()];
    if (rng() % 5 == 0)
      c.label = "B" + std::to_string(rng() % 40);
    r.conditions.push_back(std::move(c));
  }
  if (rng() % 3 == 0)
    r.additional_info.push_back(random_text(rng));
  return r;
}

}  // namespace

TEST_SUITE("codec") {

TEST_CASE("encode then decode is the identity") {
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 200; ++k) {
    ReactionDocument doc;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i)
      doc.reactions.push_back(random_record(rng, i + 1));
    if (rng() % 2)
      doc.text_description.push_back(random_text(rng));
    CHECK(validate_records(doc.reactions).empty());
    CHECK(decode_document_text(encode_document_text(doc)) == doc);
    CHECK(decode_document_text(encode_document_text(doc, -1)) == doc);
  }
}

TEST_CASE("classification is total and deterministic") {
  std::mt19937_64 rng(kSeed + 1);
  const auto &lex = ConditionLexicon::defaults();
  for (int k = 0; k < 300; ++k) {
    std::string text = k < 14 ? kConditionText[k] : random_text(rng);
    auto a = classify_condition(text, lex);
    CHECK(a == classify_condition(text, lex));
    for (const auto &c: a)
      CHECK(condition_role_from_string(to_string(c.role)) == c.role);
  }
}

TEST_CASE("align_conditions never duplicates an item") {
  std::mt19937_64 rng(kSeed + 2);
  const auto &lex = ConditionLexicon::defaults();
  for (int k = 0; k < 100; ++k) {
    std::vector<ConditionItem> shared;
    for (int i = 0; i < 3; ++i)
      for (auto &c: classify_condition(
               kConditionText[rng() % kConditionText.size()], lex))
        shared.push_back(c);
    std::map<std::string, std::vector<ConditionItem>> per_variant;
    std::vector<ReactionRecord> records;
    for (int i = 0; i < 3; ++i) {
      std::string label = "3" + std::string(1, static_cast<char>('a' + i));
      ReactionRecord r = random_record(rng, i + 1);
      r.products[0].label = label;
      records.push_back(r);
      for (int j = 0; j < 2; ++j)
        for (auto &c: classify_condition(
                 kConditionText[rng() % kConditionText.size()], lex))
          per_variant[label].push_back(c);
    }
    for (const auto &r: align_conditions(shared, per_variant, records).records) {
      std::set<std::tuple<ConditionRole, std::string, std::optional<std::string>>>
          seen;
      for (const auto &c: r.conditions)
        CHECK(seen.insert({ c.role, c.text, c.label }).second);
    }
  }
}

}  // TEST_SUITE
