//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/eval.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

struct Key {
  std::vector<std::string> reactants;
  std::vector<std::string> products;
  std::vector<std::pair<std::string, std::string>> conditions;
};

std::string normalize_text(std::string_view text) {
  std::istringstream in { std::string(text) };
  std::string w;
  std::string out;
  while (in >> w) {
    if (!out.empty())
      out += ' ';
    out += w;
  }
  for (char &c: out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> canonical_side(const std::vector<MoleculeEntry> &side) {
  std::vector<std::string> out;
  for (const MoleculeEntry &m: side)
    out.push_back(canonicalize(m.smiles));
  std::sort(out.begin(), out.end());
  return out;
}

Key make_key(const ReactionRecord &r) {
  Key k { canonical_side(r.reactants), canonical_side(r.products), {} };
  for (const ConditionItem &c: r.conditions)
    k.conditions.emplace_back(std::string(to_string(c.role)),
                              normalize_text(c.text));
  std::sort(k.conditions.begin(), k.conditions.end());
  return k;
}

std::optional<Key> try_key(const ReactionRecord &r) {
  try {
    return make_key(r);
  } catch (const Error &) {
    return std::nullopt;
  }
}

bool keys_equal(const Key &a, const Key &b, MatchMode mode) {
  if (a.reactants != b.reactants || a.products != b.products)
    return false;
  return mode == MatchMode::kSoft || a.conditions == b.conditions;
}

// Kuhn's augmenting paths; gold vertices are tried in index order.
class BipartiteMatcher {
public:
  explicit BipartiteMatcher(const std::vector<std::vector<int>> &edges,
                            int pred_count)
      : edges_(edges), pred_of_(edges.size(), -1),
        gold_of_(pred_count, -1) { }

  void run() {
    for (int g = 0; g < static_cast<int>(edges_.size()); ++g) {
      seen_.assign(gold_of_.size(), false);
      augment(g);
    }
  }

  const std::vector<int> &pred_of() const { return pred_of_; }

private:
  bool augment(int g) {
    for (int p: edges_[g]) {
      if (seen_[p])
        continue;
      seen_[p] = true;
      if (gold_of_[p] < 0 || augment(gold_of_[p])) {
        gold_of_[p] = g;
        pred_of_[g] = p;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<int>> &edges_;
  std::vector<int> pred_of_;
  std::vector<int> gold_of_;
  std::vector<bool> seen_;
};

bool has_placeholder(const std::string &smiles) {
  try {
    for (const AtomToken &a: parse_smiles(smiles).atoms)
      if (a.is_placeholder())
        return true;
  } catch (const Error &) {
  }
  return false;
}

std::vector<std::string> molecules_of(const std::vector<ReactionRecord> &rs,
                                      bool skip_placeholders) {
  std::vector<std::string> out;
  for (const ReactionRecord &r: rs)
    for (const auto *side: { &r.reactants, &r.products })
      for (const MoleculeEntry &m: *side)
        if (!skip_placeholders || !has_placeholder(m.smiles))
          out.push_back(m.smiles);
  return out;
}

nlohmann::ordered_json counts_json(const MatchCounts &c) {
  Prf p = prf(c);
  nlohmann::ordered_json j;
  j["correct"] = c.correct;
  j["predicted"] = c.predicted;
  j["gold"] = c.gold;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  return j;
}

}  // namespace

Prf prf(int correct, int predicted, int gold) {
  Prf out;
  out.precision = predicted > 0 ? static_cast<double>(correct) / predicted : 0;
  out.recall = gold > 0 ? static_cast<double>(correct) / gold : 0;
  double s = out.precision + out.recall;
  out.f1 = s > 0 ? 2 * out.precision * out.recall / s : 0;
  return out;
}

Prf prf(const MatchCounts &c) {
  return prf(c.correct, c.predicted, c.gold);
}

bool reactions_equal(const ReactionRecord &pred, const ReactionRecord &gold,
                     MatchMode mode) {
  auto a = try_key(pred);
  auto b = try_key(gold);
  return a && b && keys_equal(*a, *b, mode);
}

ReactionMatch match_reactions(const std::vector<ReactionRecord> &pred,
                              const std::vector<ReactionRecord> &gold,
                              MatchMode mode) {
  std::vector<Key> gold_keys;
  for (const ReactionRecord &r: gold)
    gold_keys.push_back(make_key(r));
  std::vector<std::optional<Key>> pred_keys;
  for (const ReactionRecord &r: pred)
    pred_keys.push_back(try_key(r));

  std::vector<std::vector<int>> edges(gold.size());
  for (std::size_t g = 0; g < gold.size(); ++g)
    for (std::size_t p = 0; p < pred.size(); ++p)
      if (pred_keys[p] && keys_equal(*pred_keys[p], gold_keys[g], mode))
        edges[g].push_back(static_cast<int>(p));

  BipartiteMatcher m(edges, static_cast<int>(pred.size()));
  m.run();
  ReactionMatch out;
  out.counts = { 0, static_cast<int>(pred.size()),
                 static_cast<int>(gold.size()), mode };
  for (std::size_t g = 0; g < gold.size(); ++g) {
    int p = m.pred_of()[g];
    if (p < 0)
      continue;
    ++out.counts.correct;
    out.pairs.emplace_back(p, static_cast<int>(g));
  }
  return out;
}

SimilarityReport similarity_report(const std::vector<std::string> &pred,
                                   const std::vector<std::string> &gold) {
  SimilarityReport out;
  if (gold.empty())
    return out;
  std::vector<std::optional<Fingerprint>> pfp;
  for (const std::string &s: pred) {
    try {
      pfp.push_back(fingerprint(parse_smiles(s)));
    } catch (const Error &) {
      pfp.push_back(std::nullopt);
    }
  }
  std::vector<bool> used(pred.size(), false);
  double total = 0;
  int exact = 0;
  for (const std::string &s: gold) {
    Fingerprint gfp = fingerprint(parse_smiles(s));
    int best = -1;
    double best_sim = -1;
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (used[p] || !pfp[p])
        continue;
      double sim = tanimoto(*pfp[p], gfp);
      if (sim > best_sim) {
        best_sim = sim;
        best = static_cast<int>(p);
      }
    }
    if (best < 0)
      continue;
    used[best] = true;
    total += best_sim;
    if (best_sim == 1.0)
      ++exact;
  }
  out.avg_tanimoto = total / static_cast<double>(gold.size());
  out.tani_at_1 = static_cast<double>(exact) / static_cast<double>(gold.size());
  return out;
}

Prf valid_rate(const std::vector<ReactionRecord> &pred,
               const std::vector<ReactionRecord> &gold) {
  std::vector<std::string> p = molecules_of(pred, false);
  std::size_t g = molecules_of(gold, false).size();
  int valid = 0;
  for (const std::string &s: p)
    valid += is_valid(std::string_view(s)) ? 1 : 0;
  Prf out;
  out.precision = p.empty() ? 0 : static_cast<double>(valid) / p.size();
  out.recall = g == 0 ? 0 : std::min(1.0, static_cast<double>(valid) / g);
  double s = out.precision + out.recall;
  out.f1 = s > 0 ? 2 * out.precision * out.recall / s : 0;
  return out;
}

EvalReport evaluate(const std::vector<ReactionRecord> &pred,
                    const std::vector<ReactionRecord> &gold) {
  EvalReport r;
  r.soft = match_reactions(pred, gold, MatchMode::kSoft).counts;
  r.hard = match_reactions(pred, gold, MatchMode::kHard).counts;
  SimilarityReport sim = similarity_report(molecules_of(pred, true),
                                           molecules_of(gold, true));
  r.avg_tanimoto = sim.avg_tanimoto;
  r.tani_at_1 = sim.tani_at_1;
  r.valid = valid_rate(pred, gold);
  return r;
}

nlohmann::ordered_json report_to_json(const EvalReport &r) {
  nlohmann::ordered_json j;
  j["soft"] = counts_json(r.soft);
  j["hard"] = counts_json(r.hard);
  j["avg_tanimoto"] = r.avg_tanimoto;
  j["tani_at_1"] = r.tani_at_1;
  j["valid_rate"] = { { "precision", r.valid.precision },
                      { "recall", r.valid.recall },
                      { "f1", r.valid.f1 },
                      { "recall_denominator", "gold_smiles" } };
  return j;
}

}  // namespace rxnscope
