//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "elements.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"
#include "smiles_internal.hpp"

namespace rxnscope {
namespace {

constexpr int kLeafBudget = 128;

// Dense ranks of keys, ordered by key.
template <typename Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return keys[x] < keys[y]; });
  std::vector<int> out(keys.size());
  int r = -1;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || keys[idx[k - 1]] < keys[idx[k]])
      ++r;
    out[idx[k]] = r;
  }
  return out;
}

int class_count(const std::vector<int> &classes) {
  return classes.empty()
             ? 0
             : *std::max_element(classes.begin(), classes.end()) + 1;
}

using AtomInvariant = std::tuple<int, std::string, bool, int, int, int, int,
                                 bool>;

std::vector<int> initial_classes(const MolecularGraph &g, const Adjacency &adj,
                                 const std::vector<bool> &in_ring) {
  std::vector<AtomInvariant> keys;
  keys.reserve(g.atoms.size());
  for (int i = 0; i < g.atom_count(); ++i) {
    const AtomToken &a = g.atoms[i];
    bool ring = false;
    for (Neighbor nb: adj[i])
      ring |= static_cast<bool>(in_ring[nb.bond]);
    keys.emplace_back(static_cast<int>(a.kind), a.text, a.aromatic,
                      a.isotope.value_or(0), a.charge, adj.degree(i),
                      hydrogen_count(g, adj, i), ring);
  }
  return dense_ranks(keys);
}

std::vector<int> refine(const MolecularGraph &g, const Adjacency &adj,
                        std::vector<int> classes) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int count = class_count(classes);
  while (true) {
    std::vector<Key> keys(g.atoms.size());
    for (int i = 0; i < g.atom_count(); ++i) {
      keys[i].first = classes[i];
      for (Neighbor nb: adj[i])
        keys[i].second.emplace_back(
            classes[nb.atom], static_cast<int>(g.bonds[nb.bond].order));
      std::sort(keys[i].second.begin(), keys[i].second.end());
    }
    auto next = dense_ranks(keys);
    int next_count = class_count(next);
    classes = std::move(next);
    if (next_count == count)
      return classes;
    count = next_count;
  }
}

struct Search {
  Search(const MolecularGraph &graph, const Adjacency &adjacency, bool iso)
      : g(graph), adj(adjacency), isomeric(iso) { }

  const MolecularGraph &g;
  const Adjacency &adj;
  bool isomeric;
  int leaves = 0;
  std::string best;
  std::vector<int> best_rank;

  void run(const std::vector<int> &classes) {
    int n = static_cast<int>(classes.size());
    if (class_count(classes) == n) {
      ++leaves;
      std::string s = internal::write_ranked(g, classes, isomeric);
      if (best_rank.empty() || s < best) {
        best = std::move(s);
        best_rank = classes;
      }
      return;
    }
    // Lowest class with more than one member.
    std::vector<int> size(n, 0);
    for (int c: classes)
      ++size[c];
    int tied = 0;
    while (size[tied] < 2)
      ++tied;
    for (int m = 0; m < n; ++m) {
      if (classes[m] != tied)
        continue;
      std::vector<int> split(n);
      for (int i = 0; i < n; ++i)
        split[i] = 2 * classes[i] + (classes[i] == tied && i != m ? 1 : 0);
      run(refine(g, adj, dense_ranks(split)));
      if (leaves >= kLeafBudget)
        return;
    }
  }
};

// Stereo that cannot be distinguished by the graph is dropped so that
// equivalent drawings canonicalize identically.
void strip_symmetric_stereo(MolecularGraph &g) {
  Adjacency adj(g);
  auto classes = symmetry_classes(g);
  for (int i = 0; i < g.atom_count(); ++i) {
    AtomToken &a = g.atoms[i];
    if (a.chirality == Chirality::kNone)
      continue;
    std::vector<int> ref_classes;
    bool ok = a.stereo_refs.size() >= 3;
    int h_refs = 0;
    for (int r: a.stereo_refs) {
      if (r == kImplicitHydrogen) {
        ++h_refs;
        ref_classes.push_back(-1);
      } else if (r >= 0 && r < g.atom_count() && g.find_bond(i, r) >= 0) {
        ref_classes.push_back(classes[r]);
      } else {
        ok = false;
      }
    }
    if (h_refs > 0 && hydrogen_count(g, adj, i) != h_refs)
      ok = false;
    if (h_refs == 0 && hydrogen_count(g, adj, i) > 0)
      ok = false;
    std::sort(ref_classes.begin(), ref_classes.end());
    if (std::adjacent_find(ref_classes.begin(), ref_classes.end())
        != ref_classes.end())
      ok = false;
    if (!ok) {
      a.chirality = Chirality::kNone;
      a.stereo_refs.clear();
    }
  }
  for (int bi = 0; bi < g.bond_count(); ++bi) {
    Bond &b = g.bonds[bi];
    if (b.stereo == BondStereo::kNone)
      continue;
    bool ok = b.order == BondOrder::kDouble;
    for (int end = 0; end < 2 && ok; ++end) {
      int d = end == 0 ? b.a : b.b;
      int partner = b.other(d);
      std::vector<int> subs;
      for (Neighbor nb: adj[d])
        if (nb.atom != partner)
          subs.push_back(nb.atom);
      int h = hydrogen_count(g, adj, d);
      int ref = b.stereo_refs[end];
      if (subs.empty() || (subs.size() + h != 2 && subs.size() + h != 1))
        ok = false;
      else if (std::find(subs.begin(), subs.end(), ref) == subs.end())
        ok = false;
      else if (subs.size() == 2 && classes[subs[0]] == classes[subs[1]])
        ok = false;
    }
    if (!ok) {
      b.stereo = BondStereo::kNone;
      b.stereo_refs = { -1, -1 };
    }
  }
}

void strip_all_stereo(MolecularGraph &g) {
  for (AtomToken &a: g.atoms) {
    a.chirality = Chirality::kNone;
    a.stereo_refs.clear();
  }
  for (Bond &b: g.bonds) {
    b.stereo = BondStereo::kNone;
    b.stereo_refs = { -1, -1 };
  }
}

std::string canonical_component(const MolecularGraph &g, bool isomeric) {
  Adjacency adj(g);
  auto in_ring = ring_bonds(g);
  auto classes = refine(g, adj, initial_classes(g, adj, in_ring));
  Search search(g, adj, isomeric);
  search.run(classes);
  return search.best;
}

}  // namespace

std::vector<int> symmetry_classes(const MolecularGraph &g) {
  Adjacency adj(g);
  auto in_ring = ring_bonds(g);
  return refine(g, adj, initial_classes(g, adj, in_ring));
}

std::vector<int> canonical_ranks(const MolecularGraph &g) {
  Adjacency adj(g);
  auto in_ring = ring_bonds(g);
  auto classes = refine(g, adj, initial_classes(g, adj, in_ring));
  Search search(g, adj, true);
  search.run(classes);
  return search.best_rank;
}

MolecularGraph fold_hydrogens(const MolecularGraph &g) {
  Adjacency adj(g);
  std::vector<bool> drop(g.atoms.size(), false);
  std::vector<int> extra(g.atoms.size(), 0);
  for (int i = 0; i < g.atom_count(); ++i) {
    const AtomToken &a = g.atoms[i];
    if (!a.is_hydrogen() || a.charge != 0 || a.isotope || adj.degree(i) != 1
        || a.explicit_h.value_or(0) != 0)
      continue;
    Neighbor nb = adj[i][0];
    const AtomToken &host = g.atoms[nb.atom];
    if (!host.is_element() || host.is_hydrogen()
        || g.bonds[nb.bond].order != BondOrder::kSingle)
      continue;
    drop[i] = true;
    ++extra[nb.atom];
  }
  if (std::none_of(drop.begin(), drop.end(), [](bool d) { return d; }))
    return g;

  MolecularGraph work = g;
  for (int i = 0; i < work.atom_count(); ++i)
    if (extra[i] > 0)
      work.atoms[i].explicit_h = hydrogen_count(g, adj, i) + extra[i];

  // Stereo references to dropped hydrogens.
  for (int i = 0; i < work.atom_count(); ++i)
    for (int &r: work.atoms[i].stereo_refs)
      if (r >= 0 && drop[r])
        r = kImplicitHydrogen;
  for (Bond &b: work.bonds) {
    if (b.stereo == BondStereo::kNone)
      continue;
    for (int end = 0; end < 2; ++end) {
      int ref = b.stereo_refs[end];
      if (ref < 0 || !drop[ref])
        continue;
      int d = end == 0 ? b.a : b.b;
      int partner = b.other(d);
      int replacement = -1;
      for (Neighbor nb: adj[d])
        if (nb.atom != partner && nb.atom != ref && !drop[nb.atom])
          replacement = nb.atom;
      if (replacement < 0) {
        b.stereo = BondStereo::kNone;
        b.stereo_refs = { -1, -1 };
        break;
      }
      b.stereo_refs[end] = replacement;
      b.stereo = b.stereo == BondStereo::kCis ? BondStereo::kTrans
                                              : BondStereo::kCis;
    }
  }

  std::vector<int> keep;
  for (int i = 0; i < work.atom_count(); ++i)
    if (!drop[i])
      keep.push_back(i);
  return induced_subgraph(work, keep).graph;
}

std::string canonical_smiles(const MolecularGraph &g, bool isomeric) {
  MolecularGraph work = fold_hydrogens(g);
  perceive_aromaticity(work);
  if (isomeric)
    strip_symmetric_stereo(work);
  else
    strip_all_stereo(work);

  std::vector<std::string> parts;
  for (const auto &comp: connected_components(work)) {
    Subgraph sub = induced_subgraph(work, comp);
    parts.push_back(canonical_component(sub.graph, isomeric));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      out += '.';
    out += parts[i];
  }
  return out;
}

std::string canonicalize(std::string_view s, bool isomeric) {
  return canonical_smiles(parse_smiles(s), isomeric);
}

bool is_valid(const MolecularGraph &g) {
  if (g.empty() || !validate_graph(g).empty())
    return false;
  Adjacency adj(g);
  for (int i = 0; i < g.atom_count(); ++i) {
    const AtomToken &a = g.atoms[i];
    if (!a.is_element())
      return false;
    auto allowed = internal::allowed_valences(a.text, a.charge);
    if (!allowed)
      continue;
    int h = hydrogen_count(g, adj, i);
    int total = internal::effective_valence(g, adj, i, h) + h;
    if (std::find(allowed->begin(), allowed->end(), total) == allowed->end())
      return false;
  }
  return true;
}

bool is_valid(std::string_view s) {
  try {
    return is_valid(parse_smiles(s));
  } catch (const SmilesParseError &) {
    return false;
  }
}

}  // namespace rxnscope
