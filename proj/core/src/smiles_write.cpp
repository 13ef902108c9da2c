//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "elements.hpp"
#include "rxnscope/smiles.hpp"
#include "smiles_internal.hpp"

namespace rxnscope {
namespace internal {

std::string format_atom(const AtomToken &atom, int hydrogens,
                        Chirality chirality, bool organic_ok) {
  switch (atom.kind) {
  case AtomKind::kPlaceholder:
    return atom.text;
  case AtomKind::kAbbreviation:
    return "[" + atom.text + "]";
  case AtomKind::kWildcard:
  case AtomKind::kElement:
    break;
  }

  std::string symbol = atom.text;
  if (atom.aromatic && !symbol.empty())
    symbol[0] = static_cast<char>(std::tolower(symbol[0]));
  if (organic_ok)
    return symbol;

  std::string out = "[";
  if (atom.isotope)
    out += std::to_string(*atom.isotope);
  out += symbol;
  if (chirality == Chirality::kCcw)
    out += "@";
  else if (chirality == Chirality::kCw)
    out += "@@";
  if (hydrogens > 0) {
    out += "H";
    if (hydrogens > 1)
      out += std::to_string(hydrogens);
  }
  if (atom.charge != 0) {
    out += atom.charge > 0 ? "+" : "-";
    if (std::abs(atom.charge) > 1)
      out += std::to_string(std::abs(atom.charge));
  }
  out += "]";
  return out;
}

bool writable_unbracketed(const MolecularGraph &g, const Adjacency &adj,
                          int atom) {
  const AtomToken &a = g.atoms[atom];
  if (a.kind == AtomKind::kWildcard)
    return !a.isotope && a.charge == 0 && a.explicit_h.value_or(0) == 0;
  if (!a.is_element() || !is_organic_subset(a.text) || a.charge != 0
      || a.isotope)
    return false;
  if (!a.explicit_h)
    return true;
  return *a.explicit_h == default_hydrogens(g, adj, atom);
}

namespace {

class Writer {
public:
  Writer(const MolecularGraph &g, std::span<const int> rank, bool isomeric)
      : g_(g), adj_(g), rank_(rank.begin(), rank.end()), isomeric_(isomeric),
        visited_(g.atoms.size(), false), parent_bond_(g.atoms.size(), -1),
        children_(g.atoms.size()), openings_(g.atoms.size()),
        closings_(g.atoms.size()), written_from_(g.bonds.size(), -1),
        bond_done_(g.bonds.size(), false) { }

  std::string run() {
    std::vector<int> by_rank(g_.atoms.size());
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](int x, int y) { return rank_[x] < rank_[y]; });

    std::vector<int> roots;
    for (int s: by_rank) {
      if (visited_[s])
        continue;
      roots.push_back(s);
      traverse(s);
    }
    if (isomeric_)
      assign_marks();

    std::string out;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      if (r > 0)
        out += '.';
      in_use_.clear();
      emit(roots[r], out);
    }
    return out;
  }

private:
  std::vector<Neighbor> sorted_neighbors(int u) const {
    auto span = adj_[u];
    std::vector<Neighbor> nbrs(span.begin(), span.end());
    std::sort(nbrs.begin(), nbrs.end(), [&](Neighbor x, Neighbor y) {
      return rank_[x.atom] < rank_[y.atom];
    });
    return nbrs;
  }

  // First pass: DFS tree plus ring-closure bookkeeping.
  void traverse(int root) {
    struct Frame {
      int atom;
      std::vector<Neighbor> nbrs;
      std::size_t next;
    };
    visited_[root] = true;
    dfs_order_.push_back(root);
    std::vector<Frame> stack;
    stack.push_back({ root, sorted_neighbors(root), 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next == f.nbrs.size()) {
        stack.pop_back();
        continue;
      }
      Neighbor nb = f.nbrs[f.next++];
      int u = f.atom;
      if (bond_done_[nb.bond])
        continue;
      bond_done_[nb.bond] = true;
      if (!visited_[nb.atom]) {
        visited_[nb.atom] = true;
        dfs_order_.push_back(nb.atom);
        parent_bond_[nb.atom] = nb.bond;
        children_[u].push_back(nb.atom);
        written_from_[nb.bond] = u;
        stack.push_back({ nb.atom, sorted_neighbors(nb.atom), 0 });
      } else {
        // nb.atom is an ancestor still on the stack.
        openings_[nb.atom].push_back(nb.bond);
        closings_[u].push_back(nb.bond);
        written_from_[nb.bond] = nb.atom;
      }
    }
  }

  // Side of neighbor n relative to double-bond atom d given the mark on
  // their bond.
  int side_of(int bond, int n) const {
    int dir = marks_.at(bond);
    return written_from_[bond] == n ? -dir : dir;
  }

  void set_side(int bond, int n, int side) {
    marks_[bond] = written_from_[bond] == n ? -side : side;
  }

  bool markable(int bond) const {
    return g_.bonds[bond].order == BondOrder::kSingle;
  }

  void assign_marks() {
    std::vector<int> stereo;
    for (int i = 0; i < g_.bond_count(); ++i) {
      const Bond &b = g_.bonds[i];
      if (b.stereo == BondStereo::kNone || b.order != BondOrder::kDouble)
        continue;
      if (b.stereo_refs[0] < 0 || b.stereo_refs[1] < 0)
        continue;
      if (g_.find_bond(b.a, b.stereo_refs[0]) < 0
          || g_.find_bond(b.b, b.stereo_refs[1]) < 0)
        continue;
      stereo.push_back(i);
    }
    std::vector<int> pos(g_.atoms.size());
    for (std::size_t k = 0; k < dfs_order_.size(); ++k)
      pos[dfs_order_[k]] = static_cast<int>(k);
    std::sort(stereo.begin(), stereo.end(), [&](int x, int y) {
      const Bond &bx = g_.bonds[x];
      const Bond &by = g_.bonds[y];
      return std::min(pos[bx.a], pos[bx.b]) < std::min(pos[by.a], pos[by.b]);
    });

    for (int bi: stereo) {
      const Bond &b = g_.bonds[bi];
      int a = b.a;
      int z = b.b;
      int ra = b.stereo_refs[0];
      int rz = b.stereo_refs[1];
      if (pos[z] < pos[a]) {
        std::swap(a, z);
        std::swap(ra, rz);
      }
      bool cis = b.stereo == BondStereo::kCis;

      // Side of ra relative to a, from an existing mark or a fresh "/" on
      // the lowest-ranked single bond.
      std::optional<int> side_a = existing_side(a, bi, ra);
      if (!side_a) {
        int n = lowest_markable(a, z);
        if (n < 0)
          continue;
        int bond = g_.find_bond(a, n);
        marks_[bond] = 1;
        int s = side_of(bond, n);
        side_a = n == ra ? s : -s;
      }
      int needed = cis ? *side_a : -*side_a;
      if (existing_side(z, bi, rz))
        continue;  // fixed by a neighboring bond; conflicts are not encodable
      int n = lowest_markable(z, a);
      if (n < 0)
        continue;
      set_side(g_.find_bond(z, n), n, n == rz ? needed : -needed);
    }
  }

  int lowest_markable(int d, int other) const {
    int best = -1;
    for (Neighbor nb: adj_[d])
      if (nb.atom != other && markable(nb.bond)
          && (best < 0 || rank_[nb.atom] < rank_[best]))
        best = nb.atom;
    return best;
  }

  // Side of `ref` relative to endpoint `d` implied by marks already placed
  // on d's other single bonds.
  std::optional<int> existing_side(int d, int double_bond, int ref) const {
    for (Neighbor nb: adj_[d]) {
      if (nb.bond == double_bond || !marks_.count(nb.bond))
        continue;
      int s = side_of(nb.bond, nb.atom);
      return nb.atom == ref ? s : -s;
    }
    return std::nullopt;
  }

  std::string bond_symbol(int bond) const {
    const Bond &b = g_.bonds[bond];
    bool both_aromatic = g_.atoms[b.a].aromatic && g_.atoms[b.b].aromatic;
    if (isomeric_) {
      auto it = marks_.find(bond);
      if (it != marks_.end())
        return it->second > 0 ? "/" : "\\";
    }
    switch (b.order) {
    case BondOrder::kDouble: return "=";
    case BondOrder::kTriple: return "#";
    case BondOrder::kAromatic: return both_aromatic ? "" : ":";
    case BondOrder::kSingle: return both_aromatic ? "-" : "";
    }
    return "";
  }

  int allocate_digit(const std::vector<int> &reserved) {
    for (int d = 1;; ++d)
      if (!in_use_.count(d)
          && std::find(reserved.begin(), reserved.end(), d) == reserved.end()) {
        in_use_.insert({ d, true });
        return d;
      }
  }

  static std::string digit_text(int d) {
    if (d < 10)
      return std::to_string(d);
    return "%" + std::to_string(d);
  }

  void emit(int u, std::string &out) {
    const AtomToken &atom = g_.atoms[u];
    std::vector<int> order;
    if (parent_bond_[u] >= 0)
      order.push_back(g_.bonds[parent_bond_[u]].other(u));

    int h = hydrogen_count(g_, adj_, u);
    Chirality chir = Chirality::kNone;
    std::string ring_text;
    std::vector<int> freed;
    for (int bond: closings_[u]) {
      int d = digit_of_.at(bond);
      ring_text += digit_text(d);
      freed.push_back(d);
      order.push_back(g_.bonds[bond].other(u));
    }
    for (int bond: openings_[u]) {
      int d = allocate_digit(freed);
      digit_of_[bond] = d;
      ring_text += bond_symbol(bond) + digit_text(d);
      order.push_back(g_.bonds[bond].other(u));
    }
    for (int d: freed)
      in_use_.erase(d);
    for (int child: children_[u])
      order.push_back(child);

    bool chiral = isomeric_ && atom.is_element()
                  && atom.chirality != Chirality::kNone;
    if (chiral) {
      std::vector<int> full = order;
      if (h > 0) {
        // The bracket hydrogen follows the preceding atom.
        auto at = parent_bond_[u] >= 0 ? full.begin() + 1 : full.begin();
        full.insert(at, kImplicitHydrogen);
      }
      chir = reorder_chirality(atom.chirality, atom.stereo_refs, full);
    }
    bool plain = chir == Chirality::kNone && writable_unbracketed(g_, adj_, u);
    out += format_atom(atom, atom.is_element() || atom.kind == AtomKind::kWildcard
                                 ? h
                                 : 0,
                       chir, plain);
    out += ring_text;

    for (std::size_t k = 0; k < children_[u].size(); ++k) {
      int child = children_[u][k];
      bool last = k + 1 == children_[u].size();
      if (!last)
        out += '(';
      out += bond_symbol(parent_bond_[child]);
      emit(child, out);
      if (!last)
        out += ')';
    }
  }

  const MolecularGraph &g_;
  Adjacency adj_;
  std::vector<int> rank_;
  bool isomeric_;
  std::vector<bool> visited_;
  std::vector<int> parent_bond_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> openings_;
  std::vector<std::vector<int>> closings_;
  std::vector<int> written_from_;
  std::vector<bool> bond_done_;
  std::vector<int> dfs_order_;
  std::map<int, int> marks_;
  std::map<int, int> digit_of_;
  std::map<int, bool> in_use_;
};

}  // namespace

std::string write_ranked(const MolecularGraph &g, std::span<const int> rank,
                         bool isomeric) {
  return Writer(g, rank, isomeric).run();
}

}  // namespace internal

std::string write_smiles(const MolecularGraph &g, bool isomeric) {
  std::vector<int> rank(g.atoms.size());
  std::iota(rank.begin(), rank.end(), 0);
  return internal::write_ranked(g, rank, isomeric);
}

}  // namespace rxnscope
