//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_EVAL_HPP_
#define RXNSCOPE_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rxnscope/molgraph.hpp"
#include "rxnscope/reaction.hpp"

namespace rxnscope {

enum class MatchMode { kSoft, kHard };

struct MatchCounts {
  int correct = 0;
  int predicted = 0;
  int gold = 0;
  MatchMode mode = MatchMode::kSoft;

  bool operator==(const MatchCounts &) const = default;
};

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Rates as fractions in [0, 1]; zero denominators give zero.
Prf prf(const MatchCounts &c);
Prf prf(int correct, int predicted, int gold);

struct ReactionMatch {
  MatchCounts counts;
  // (prediction index, gold index), sorted by gold index.
  std::vector<std::pair<int, int>> pairs;
};

/// Whether two records describe the same reaction: equal canonical reactant
/// and product multisets, plus equal (role, normalized text) condition
/// multisets in hard mode.
bool reactions_equal(const ReactionRecord &pred, const ReactionRecord &gold,
                     MatchMode mode);

/// One-to-one maximum matching under reactions_equal. Throws if a gold SMILES
/// does not parse.
ReactionMatch match_reactions(const std::vector<ReactionRecord> &pred,
                              const std::vector<ReactionRecord> &gold,
                              MatchMode mode);

/// Fixed-width bit set of hashed linear paths.
class Fingerprint {
public:
  static constexpr std::size_t kDefaultWidth = 2048;

  explicit Fingerprint(std::size_t width = kDefaultWidth);

  std::size_t width() const { return width_; }
  void set(std::size_t bit);
  bool test(std::size_t bit) const;
  std::size_t count() const;
  std::vector<std::size_t> bits() const;

  bool operator==(const Fingerprint &) const = default;

  friend std::size_t intersection_count(const Fingerprint &a,
                                        const Fingerprint &b);
  friend std::size_t union_count(const Fingerprint &a, const Fingerprint &b);

private:
  std::size_t width_;
  std::vector<std::uint64_t> words_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

/// Every simple path of 0 to 7 bonds (atom: element, charge, aromatic flag;
/// bond: order), hashed with the smaller of its two directional hashes.
/// Hydrogen atoms are folded and aromaticity perceived first. Throws FingerprintError on placeholders.
Fingerprint fingerprint(const MolecularGraph &g,
                        std::size_t width = Fingerprint::kDefaultWidth);

/// |a & b| / |a | b|, 1 for two empty sets. Throws FingerprintError on a
/// width mismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

struct SimilarityReport {
  double avg_tanimoto = 0;
  double tani_at_1 = 0;
};

/// Each gold molecule in order takes its most similar unused prediction.
/// Unparseable predictions never pair; gold must parse.
SimilarityReport similarity_report(const std::vector<std::string> &pred,
                                   const std::vector<std::string> &gold);

/// Valid predicted SMILES over predicted SMILES (precision) and over gold
/// SMILES capped at 1 (recall), counted across reactants and products.
Prf valid_rate(const std::vector<ReactionRecord> &pred,
               const std::vector<ReactionRecord> &gold);

struct EvalReport {
  MatchCounts soft;
  MatchCounts hard;
  double avg_tanimoto = 0;
  double tani_at_1 = 0;
  Prf valid;
};

/// Full metric suite. Molecules with placeholders are left out of the
/// similarity metrics.
EvalReport evaluate(const std::vector<ReactionRecord> &pred,
                    const std::vector<ReactionRecord> &gold);

nlohmann::ordered_json report_to_json(const EvalReport &r);

}  // namespace rxnscope

#endif  // RXNSCOPE_EVAL_HPP_
