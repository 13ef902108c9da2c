//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <bit>

#include "rxnscope/error.hpp"
#include "rxnscope/eval.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

constexpr int kMaxPathBonds = 7;

std::string atom_descriptor(const AtomToken &a) {
  std::string d = a.text;
  if (a.kind == AtomKind::kWildcard && a.isotope)
    d += std::to_string(*a.isotope);
  d += '|';
  d += std::to_string(a.charge);
  d += a.aromatic ? "|a" : "|n";
  return d;
}

std::string bond_descriptor(BondOrder o) {
  return "-" + std::string(to_string(o)) + "-";
}

class PathHasher {
public:
  PathHasher(const MolecularGraph &g, Fingerprint &fp)
      : g_(g), adj_(g), fp_(fp), on_path_(g.atoms.size(), false) {
    for (const AtomToken &a: g.atoms)
      atom_desc_.push_back(atom_descriptor(a));
  }

  void run() {
    for (int s = 0; s < g_.atom_count(); ++s) {
      atoms_ = { s };
      bonds_.clear();
      on_path_[s] = true;
      emit();
      walk(s);
      on_path_[s] = false;
    }
  }

private:
  std::string describe(bool reverse) const {
    std::string out;
    std::size_t n = atoms_.size();
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t i = reverse ? n - 1 - k : k;
      if (k > 0) {
        std::size_t b = reverse ? i : i - 1;
        out += bond_descriptor(g_.bonds[bonds_[b]].order);
      }
      out += atom_desc_[atoms_[i]];
    }
    return out;
  }

  void emit() {
    std::uint64_t h = std::min(fnv1a(describe(false)), fnv1a(describe(true)));
    fp_.set(h % fp_.width());
  }

  void walk(int u) {
    if (static_cast<int>(bonds_.size()) == kMaxPathBonds)
      return;
    for (Neighbor nb: adj_[u]) {
      if (on_path_[nb.atom])
        continue;
      on_path_[nb.atom] = true;
      atoms_.push_back(nb.atom);
      bonds_.push_back(nb.bond);
      emit();
      walk(nb.atom);
      bonds_.pop_back();
      atoms_.pop_back();
      on_path_[nb.atom] = false;
    }
  }

  const MolecularGraph &g_;
  Adjacency adj_;
  Fingerprint &fp_;
  std::vector<bool> on_path_;
  std::vector<std::string> atom_desc_;
  std::vector<int> atoms_;
  std::vector<int> bonds_;
};

}  // namespace

Fingerprint::Fingerprint(std::size_t width)
    : width_(width), words_((width + 63) / 64, 0) {
  if (width == 0)
    throw FingerprintError("fingerprint width must be positive");
}

void Fingerprint::set(std::size_t bit) {
  if (bit >= width_)
    throw FingerprintError("bit " + std::to_string(bit) + " outside width "
                           + std::to_string(width_));
  words_[bit / 64] |= std::uint64_t { 1 } << (bit % 64);
}

bool Fingerprint::test(std::size_t bit) const {
  return bit < width_ && (words_[bit / 64] >> (bit % 64) & 1U) != 0;
}

std::size_t Fingerprint::count() const {
  std::size_t n = 0;
  for (std::uint64_t w: words_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> Fingerprint::bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

std::size_t intersection_count(const Fingerprint &a, const Fingerprint &b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
  return n;
}

std::size_t union_count(const Fingerprint &a, const Fingerprint &b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(a.words_[i] | b.words_[i]));
  return n;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c: data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Fingerprint fingerprint(const MolecularGraph &g, std::size_t width) {
  for (const AtomToken &a: g.atoms)
    if (a.is_placeholder())
      throw FingerprintError("cannot fingerprint placeholder atom " + a.text);
  MolecularGraph folded = fold_hydrogens(g);
  perceive_aromaticity(folded);
  Fingerprint fp(width);
  PathHasher(folded, fp).run();
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.width() != b.width())
    throw FingerprintError("width mismatch: " + std::to_string(a.width())
                           + " vs " + std::to_string(b.width()));
  std::size_t u = union_count(a, b);
  if (u == 0)
    return 1.0;
  return static_cast<double>(intersection_count(a, b))
         / static_cast<double>(u);
}

}  // namespace rxnscope
