//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/substructure.hpp"

#include <algorithm>
#include <deque>

#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

bool is_aryl_placeholder(const AtomToken &a) {
  return a.is_placeholder() && placeholder_label(a).starts_with("Ar");
}

bool touches_placeholder(const MolecularGraph &g, const Bond &b) {
  return g.atoms[b.a].is_placeholder() || g.atoms[b.b].is_placeholder();
}

bool is_relaxed(BondOrder o) {
  return o == BondOrder::kSingle || o == BondOrder::kAromatic;
}

class Matcher {
public:
  Matcher(const MolecularGraph &p, const MolecularGraph &t, std::size_t limit)
      : p_(p), t_(t), padj_(p), tadj_(t), limit_(limit),
        map_(p.atoms.size(), -1), used_(t.atoms.size(), false) { }

  std::vector<AtomMapping> run() {
    if (p_.empty() || limit_ == 0)
      return {};
    extend(0);
    return std::move(out_);
  }

private:
  bool feasible(int pi, int ti) const {
    if (used_[ti] || !atoms_compatible(p_.atoms[pi], t_.atoms[ti]))
      return false;
    if (tadj_.degree(ti) < padj_.degree(pi))
      return false;
    for (Neighbor nb: padj_[pi]) {
      int mapped = map_[nb.atom];
      if (mapped < 0)
        continue;
      int tb = t_.find_bond(ti, mapped);
      if (tb < 0 || !bonds_compatible(p_, p_.bonds[nb.bond], t_, t_.bonds[tb]))
        return false;
    }
    return true;
  }

  // Candidates in ascending order; neighbors of an already mapped pattern
  // neighbor's image when one exists.
  std::vector<int> candidates(int pi) const {
    std::vector<int> c;
    for (Neighbor nb: padj_[pi]) {
      int mapped = map_[nb.atom];
      if (mapped < 0)
        continue;
      for (Neighbor tn: tadj_[mapped])
        c.push_back(tn.atom);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      return c;
    }
    c.resize(t_.atoms.size());
    for (int i = 0; i < t_.atom_count(); ++i)
      c[i] = i;
    return c;
  }

  void extend(int pi) {
    if (out_.size() >= limit_)
      return;
    if (pi == p_.atom_count()) {
      out_.push_back({ map_ });
      return;
    }
    for (int ti: candidates(pi)) {
      if (!feasible(pi, ti))
        continue;
      map_[pi] = ti;
      used_[ti] = true;
      extend(pi + 1);
      used_[ti] = false;
      map_[pi] = -1;
      if (out_.size() >= limit_)
        return;
    }
  }

  const MolecularGraph &p_;
  const MolecularGraph &t_;
  Adjacency padj_;
  Adjacency tadj_;
  std::size_t limit_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<AtomMapping> out_;
};

constexpr std::size_t kAlignmentLimit = 20000;

}  // namespace

bool atoms_compatible(const AtomToken &p, const AtomToken &t) {
  switch (p.kind) {
  case AtomKind::kPlaceholder:
    return !is_aryl_placeholder(p) || t.aromatic;
  case AtomKind::kWildcard:
    if (!p.isotope)
      return true;
    return t.kind == AtomKind::kWildcard && t.isotope == p.isotope;
  case AtomKind::kAbbreviation:
    return t.kind == AtomKind::kAbbreviation && t.text == p.text;
  case AtomKind::kElement:
    return t.is_element() && t.text == p.text && t.charge == p.charge
           && t.aromatic == p.aromatic;
  }
  return false;
}

bool bonds_compatible(const MolecularGraph &pattern, const Bond &pb,
                      const MolecularGraph &target, const Bond &tb) {
  if (pb.order == tb.order)
    return true;
  return (touches_placeholder(pattern, pb) || touches_placeholder(target, tb))
         && is_relaxed(pb.order) && is_relaxed(tb.order);
}

bool verify_mapping(const MolecularGraph &pattern,
                    const MolecularGraph &target, const AtomMapping &m) {
  if (m.target.size() != pattern.atoms.size())
    return false;
  std::vector<bool> seen(target.atoms.size(), false);
  for (int i = 0; i < pattern.atom_count(); ++i) {
    int t = m.target[i];
    if (t < 0 || t >= target.atom_count() || seen[t])
      return false;
    seen[t] = true;
    if (!atoms_compatible(pattern.atoms[i], target.atoms[t]))
      return false;
  }
  for (const Bond &pb: pattern.bonds) {
    int tb = target.find_bond(m.target[pb.a], m.target[pb.b]);
    if (tb < 0 || !bonds_compatible(pattern, pb, target, target.bonds[tb]))
      return false;
  }
  return true;
}

std::vector<AtomMapping> find_matches(const MolecularGraph &pattern,
                                      const MolecularGraph &target,
                                      std::size_t limit) {
  return Matcher(pattern, target, limit).run();
}

ScaffoldAlignment scaffold_align(const MolecularGraph &tmpl,
                                 const MolecularGraph &variant) {
  std::vector<int> placeholders;
  for (int i = 0; i < tmpl.atom_count(); ++i)
    if (tmpl.atoms[i].is_placeholder())
      placeholders.push_back(i);
  if (placeholders.empty())
    throw TemplateMismatchError("template has no placeholder atoms");

  Adjacency vadj(variant);
  std::vector<AtomMapping> matches = find_matches(tmpl, variant,
                                                  kAlignmentLimit);
  if (matches.empty())
    throw TemplateMismatchError("template does not match the variant");

  ScaffoldAlignment best;
  int best_cover = -1;
  int tied = 0;
  for (const AtomMapping &m: matches) {
    std::vector<bool> blocked(variant.atoms.size(), false);
    for (int i = 0; i < tmpl.atom_count(); ++i)
      if (!tmpl.atoms[i].is_placeholder())
        blocked[m.target[i]] = true;
    int cover = static_cast<int>(tmpl.atoms.size() - placeholders.size());

    std::map<int, std::vector<int>> fragments;
    std::vector<int> owner(variant.atoms.size(), -1);
    bool overlap = false;
    for (int p: placeholders) {
      std::vector<int> set;
      std::deque<int> queue { m.target[p] };
      std::vector<bool> seen(variant.atoms.size(), false);
      seen[m.target[p]] = true;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        set.push_back(u);
        for (Neighbor nb: vadj[u])
          if (!seen[nb.atom] && !blocked[nb.atom]) {
            seen[nb.atom] = true;
            queue.push_back(nb.atom);
          }
      }
      std::sort(set.begin(), set.end());
      for (int a: set) {
        if (owner[a] >= 0)
          overlap = true;
        owner[a] = p;
      }
      cover += static_cast<int>(set.size());
      fragments[p] = std::move(set);
    }
    if (overlap)
      continue;
    if (cover > best_cover) {
      best_cover = cover;
      best.mapping = m;
      best.fragments = std::move(fragments);
      tied = 1;
    } else if (cover == best_cover && fragments != best.fragments) {
      ++tied;
    }
  }
  if (best_cover < 0)
    throw TemplateMismatchError("every template match has overlapping "
                                "substituents");
  if (tied > 1)
    best.warnings.push_back("ambiguous alignment: "
                            + std::to_string(tied)
                            + " inequivalent placements; kept the "
                              "lexicographically first");
  if (matches.size() == kAlignmentLimit)
    best.warnings.push_back("alignment search truncated at "
                            + std::to_string(kAlignmentLimit) + " matches");
  return best;
}

}  // namespace rxnscope
