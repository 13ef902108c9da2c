//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rxnscope/molgraph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "elements.hpp"
#include "rxnscope/error.hpp"
#include "smiles_internal.hpp"

namespace rxnscope {

// AtomToken ------------------------------------------------------------------

AtomToken AtomToken::element(std::string symbol, bool aromatic) {
  AtomToken t;
  t.kind = AtomKind::kElement;
  t.text = std::move(symbol);
  t.aromatic = aromatic;
  return t;
}

AtomToken AtomToken::placeholder(std::string_view label) {
  AtomToken t;
  t.kind = AtomKind::kPlaceholder;
  if (!label.empty() && label.front() == '[')
    t.text = std::string(label);
  else
    t.text = "[" + std::string(label) + "]";
  return t;
}

AtomToken AtomToken::abbreviation(std::string token) {
  AtomToken t;
  t.kind = AtomKind::kAbbreviation;
  t.text = std::move(token);
  return t;
}

AtomToken AtomToken::wildcard(std::optional<int> isotope) {
  AtomToken t;
  t.kind = AtomKind::kWildcard;
  t.text = "*";
  t.isotope = isotope;
  return t;
}

// MolecularGraph -------------------------------------------------------------

int MolecularGraph::add_atom(AtomToken atom) {
  atoms.push_back(std::move(atom));
  return atom_count() - 1;
}

int MolecularGraph::add_bond(int a, int b, BondOrder order) {
  Bond bond;
  bond.a = a;
  bond.b = b;
  bond.order = order;
  bonds.push_back(bond);
  return bond_count() - 1;
}

int MolecularGraph::find_bond(int x, int y) const {
  for (int i = 0; i < bond_count(); ++i)
    if (bonds[i].connects(x, y))
      return i;
  return -1;
}

Adjacency::Adjacency(const MolecularGraph &g)
    : offsets_(g.atoms.size() + 1, 0) {
  const int n = g.atom_count();
  for (const Bond &b: g.bonds) {
    if (b.a >= 0 && b.a < n)
      ++offsets_[b.a + 1];
    if (b.b >= 0 && b.b < n && b.b != b.a)
      ++offsets_[b.b + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  data_.resize(offsets_.back());
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (int i = 0; i < g.bond_count(); ++i) {
    const Bond &b = g.bonds[i];
    if (b.a < 0 || b.a >= n || b.b < 0 || b.b >= n || b.a == b.b)
      continue;
    data_[fill[b.a]++] = { b.b, i };
    data_[fill[b.b]++] = { b.a, i };
  }
}

// Validation -----------------------------------------------------------------

namespace {

bool matches_label_grammar(std::string_view label) {
  std::size_t i = 0;
  while (i < label.size() && std::isalpha(static_cast<unsigned char>(label[i])))
    ++i;
  if (i == 0)
    return false;
  while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i])))
    ++i;
  return i == label.size();
}

Violation atom_violation(int atom, std::string rule, std::string message) {
  return { atom, std::nullopt, std::move(rule), std::move(message) };
}

Violation bond_violation(int bond, std::string rule, std::string message) {
  return { std::nullopt, bond, std::move(rule), std::move(message) };
}

}  // namespace

std::vector<Violation> validate_graph(const MolecularGraph &g) {
  std::vector<Violation> out;
  const int n = g.atom_count();

  for (int i = 0; i < n; ++i) {
    const AtomToken &a = g.atoms[i];
    if (a.kind == AtomKind::kPlaceholder) {
      std::string_view t = a.text;
      if (t.size() < 3 || t.front() != '[' || t.back() != ']'
          || !matches_label_grammar(t.substr(1, t.size() - 2)))
        out.push_back(atom_violation(i, "placeholder_grammar",
                                     "placeholder text '" + a.text
                                         + "' is not a bracketed label"));
    } else if (a.text.empty()) {
      out.push_back(atom_violation(i, "empty_symbol", "atom has no symbol"));
    }
    if (a.explicit_h && *a.explicit_h < 0)
      out.push_back(atom_violation(i, "negative_hydrogens",
                                   "explicit hydrogen count is negative"));
    if (a.isotope && *a.isotope <= 0)
      out.push_back(atom_violation(i, "isotope_range",
                                   "isotope label must be positive"));
    if (a.coords && !(std::isfinite(a.coords->x) && std::isfinite(a.coords->y)))
      out.push_back(atom_violation(i, "coords_finite",
                                   "coordinates must be finite"));
    if ((a.chirality == Chirality::kNone) != a.stereo_refs.empty())
      out.push_back(atom_violation(i, "stereo_refs",
                                   "chirality and reference list disagree"));
    for (int r: a.stereo_refs)
      if (r < kAttachmentPoint || r >= n || r == i)
        out.push_back(atom_violation(i, "stereo_refs",
                                     "stereo reference out of range"));
  }

  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < g.bond_count(); ++i) {
    const Bond &b = g.bonds[i];
    if (b.a < 0 || b.a >= n || b.b < 0 || b.b >= n) {
      out.push_back(bond_violation(i, "bond_range",
                                   "bond endpoint out of range"));
      continue;
    }
    if (b.a == b.b) {
      out.push_back(bond_violation(i, "self_loop",
                                   "bond joins atom " + std::to_string(b.a)
                                       + " to itself"));
      continue;
    }
    auto key = std::minmax(b.a, b.b);
    if (!seen.insert(key).second)
      out.push_back(bond_violation(i, "duplicate_bond",
                                   "second bond between atoms "
                                       + std::to_string(key.first) + " and "
                                       + std::to_string(key.second)));
    if (b.wedge != Wedge::kNone && b.order != BondOrder::kSingle)
      out.push_back(bond_violation(i, "wedge_order",
                                   "wedge on a non-single bond"));
    if (b.stereo != BondStereo::kNone && b.order != BondOrder::kDouble)
      out.push_back(bond_violation(i, "bond_stereo",
                                   "cis/trans on a non-double bond"));
  }

  if (g.label && g.label->empty())
    out.push_back({ std::nullopt, std::nullopt, "empty_label",
                    "label must be non-empty when present" });
  return out;
}

// Subgraphs ------------------------------------------------------------------

std::vector<std::vector<int>> connected_components(const MolecularGraph &g) {
  Adjacency adj(g);
  std::vector<int> comp(g.atoms.size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.atom_count(); ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> members;
    std::vector<int> stack { s };
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (Neighbor nb: adj[u]) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = comp[s];
          stack.push_back(nb.atom);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

namespace {

// Induced subgraph; references to dropped neighbors of `attachment` become
// kAttachmentPoint when exactly one such neighbor exists, otherwise the
// affected stereo is cleared.
Subgraph induce(const MolecularGraph &g, std::span<const int> atoms,
                int attachment) {
  std::vector<int> remap(g.atoms.size(), -1);
  Subgraph sub;
  sub.graph.label = g.label;
  sub.graph.role = g.role;
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
    int old = atoms[i];
    if (old < 0 || old >= g.atom_count())
      throw GraphError("atom index " + std::to_string(old) + " out of range");
    if (remap[old] >= 0)
      throw GraphError("atom " + std::to_string(old) + " listed twice");
    remap[old] = i;
    sub.index_map.push_back(old);
    sub.graph.atoms.push_back(g.atoms[old]);
  }

  int dropped_at_attachment = 0;
  int dropped_neighbor = -1;
  if (attachment >= 0) {
    for (const Bond &b: g.bonds) {
      if (b.a == attachment || b.b == attachment) {
        int other = b.other(attachment);
        if (remap[other] < 0) {
          ++dropped_at_attachment;
          dropped_neighbor = other;
        }
      }
    }
  }

  auto map_ref = [&](int ref, int owner_old) -> std::optional<int> {
    if (ref == kImplicitHydrogen)
      return ref;
    if (ref == kAttachmentPoint)
      return std::nullopt;
    if (ref >= 0 && remap[ref] >= 0)
      return remap[ref];
    if (owner_old == attachment && dropped_at_attachment == 1
        && ref == dropped_neighbor)
      return kAttachmentPoint;
    return std::nullopt;
  };

  for (int i = 0; i < sub.graph.atom_count(); ++i) {
    AtomToken &a = sub.graph.atoms[i];
    if (a.stereo_refs.empty())
      continue;
    std::vector<int> refs;
    bool ok = true;
    for (int r: a.stereo_refs) {
      auto m = map_ref(r, sub.index_map[i]);
      if (!m) {
        ok = false;
        break;
      }
      refs.push_back(*m);
    }
    if (ok) {
      a.stereo_refs = std::move(refs);
    } else {
      a.stereo_refs.clear();
      a.chirality = Chirality::kNone;
    }
  }

  for (const Bond &b: g.bonds) {
    if (remap[b.a] < 0 || remap[b.b] < 0)
      continue;
    Bond nb = b;
    nb.a = remap[b.a];
    nb.b = remap[b.b];
    if (b.stereo != BondStereo::kNone) {
      auto ra = map_ref(b.stereo_refs[0], b.a);
      auto rb = map_ref(b.stereo_refs[1], b.b);
      if (ra && rb) {
        nb.stereo_refs = { *ra, *rb };
      } else {
        nb.stereo = BondStereo::kNone;
        nb.stereo_refs = { -1, -1 };
      }
    }
    sub.graph.bonds.push_back(nb);
  }
  return sub;
}

int heavy_count(const MolecularGraph &g, const std::vector<int> &atoms) {
  int n = 0;
  for (int a: atoms)
    n += g.atoms[a].is_heavy() ? 1 : 0;
  return n;
}

}  // namespace

Subgraph induced_subgraph(const MolecularGraph &g, std::span<const int> atoms) {
  return induce(g, atoms, -1);
}

Subgraph main_component(const MolecularGraph &g) {
  if (g.empty())
    throw GraphError("graph has no atoms, so no main component exists");
  auto comps = connected_components(g);
  std::size_t best = 0;
  int best_heavy = heavy_count(g, comps[0]);
  for (std::size_t i = 1; i < comps.size(); ++i) {
    int h = heavy_count(g, comps[i]);
    // Components are ordered by lowest atom index, so strict > keeps the
    // lowest-index component on ties.
    if (h > best_heavy) {
      best = i;
      best_heavy = h;
    }
  }
  return induce(g, comps[best], -1);
}

Fragment induced_fragment(const MolecularGraph &g, std::span<const int> atom_set,
                          int attachment) {
  auto pos = std::find(atom_set.begin(), atom_set.end(), attachment);
  if (pos == atom_set.end())
    throw GraphError("attachment atom " + std::to_string(attachment)
                     + " is not in the fragment atom set");
  Subgraph sub = induce(g, atom_set, attachment);
  if (connected_components(sub.graph).size() != 1)
    throw GraphError("fragment atom set is not connected");
  Fragment f;
  f.graph = std::move(sub.graph);
  f.attachment = static_cast<int>(pos - atom_set.begin());
  f.index_map = std::move(sub.index_map);
  f.graph.label.reset();
  f.graph.role.reset();
  return f;
}

MolecularGraph fragment_with_dummy(const Fragment &f) {
  MolecularGraph g = f.graph;
  int dummy = g.add_atom(AtomToken::wildcard());
  g.add_bond(dummy, f.attachment);
  for (AtomToken &a: g.atoms)
    for (int &r: a.stereo_refs)
      if (r == kAttachmentPoint)
        r = dummy;
  for (Bond &b: g.bonds)
    for (int &r: b.stereo_refs)
      if (r == kAttachmentPoint)
        r = dummy;
  return g;
}

Fragment fragment_from_dummy(const MolecularGraph &g) {
  Adjacency adj(g);
  int dummy = -1;
  for (int i = 0; i < g.atom_count(); ++i) {
    const AtomToken &a = g.atoms[i];
    if (a.kind == AtomKind::kWildcard && !a.isotope) {
      if (dummy >= 0)
        throw GraphError("fragment has more than one attachment marker");
      dummy = i;
    }
  }
  if (dummy < 0)
    throw GraphError("fragment has no '*' attachment marker");
  if (adj.degree(dummy) != 1)
    throw GraphError("attachment marker must have exactly one neighbor");
  int attachment = adj[dummy][0].atom;

  std::vector<int> keep;
  for (int i = 0; i < g.atom_count(); ++i)
    if (i != dummy)
      keep.push_back(i);
  Subgraph sub = induce(g, keep, attachment);
  Fragment f;
  f.graph = std::move(sub.graph);
  f.attachment = attachment < dummy ? attachment : attachment - 1;
  f.index_map = std::move(sub.index_map);
  return f;
}

MolecularGraph replace_atoms(const MolecularGraph &g,
                             std::span<const Replacement> replacements) {
  const int n = g.atom_count();
  std::vector<int> repl_of(n, -1);
  for (int r = 0; r < static_cast<int>(replacements.size()); ++r) {
    int atom = replacements[r].atom;
    if (atom < 0 || atom >= n)
      throw GraphError("replacement atom out of range");
    if (repl_of[atom] >= 0)
      throw GraphError("atom " + std::to_string(atom) + " replaced twice");
    if (replacements[r].fragment.graph.empty())
      throw GraphError("replacement fragment is empty");
    repl_of[atom] = r;
  }

  MolecularGraph out;
  out.label = g.label;
  out.role = g.role;
  std::vector<int> remap(n, -1);
  for (int i = 0; i < n; ++i)
    if (repl_of[i] < 0)
      remap[i] = out.add_atom(g.atoms[i]);

  Adjacency adj(g);
  std::vector<int> frag_offset(replacements.size());
  for (int r = 0; r < static_cast<int>(replacements.size()); ++r) {
    const Replacement &rep = replacements[r];
    frag_offset[r] = out.atom_count();
    for (const AtomToken &a: rep.fragment.graph.atoms)
      out.add_atom(a);
    int attach = frag_offset[r] + rep.fragment.attachment;
    remap[rep.atom] = attach;
    if (!out.atoms[attach].coords)
      out.atoms[attach].coords = g.atoms[rep.atom].coords;
  }

  // Fragment-internal references: kAttachmentPoint resolves to the single
  // scaffold neighbor of the replaced atom.
  for (int r = 0; r < static_cast<int>(replacements.size()); ++r) {
    const Replacement &rep = replacements[r];
    int outside = adj.degree(rep.atom) == 1 ? remap[adj[rep.atom][0].atom] : -1;
    auto fix = [&](int ref) -> int {
      if (ref == kAttachmentPoint)
        return outside >= 0 ? outside : kAttachmentPoint - 1;
      if (ref == kImplicitHydrogen)
        return ref;
      return ref + frag_offset[r];
    };
    int begin = frag_offset[r];
    int end = begin + rep.fragment.graph.atom_count();
    for (int i = begin; i < end; ++i) {
      AtomToken &a = out.atoms[i];
      for (int &ref: a.stereo_refs)
        ref = fix(ref);
      if (std::any_of(a.stereo_refs.begin(), a.stereo_refs.end(),
                      [](int x) { return x < kAttachmentPoint; })) {
        a.stereo_refs.clear();
        a.chirality = Chirality::kNone;
      }
    }
    for (const Bond &b: rep.fragment.graph.bonds) {
      Bond nb = b;
      nb.a += begin;
      nb.b += begin;
      if (nb.stereo != BondStereo::kNone) {
        nb.stereo_refs = { fix(b.stereo_refs[0]), fix(b.stereo_refs[1]) };
        if (nb.stereo_refs[0] < kAttachmentPoint
            || nb.stereo_refs[1] < kAttachmentPoint) {
          nb.stereo = BondStereo::kNone;
          nb.stereo_refs = { -1, -1 };
        }
      }
      out.bonds.push_back(nb);
    }
  }

  // Scaffold atoms keep their stereo; references follow the splice.
  for (int i = 0; i < n; ++i) {
    if (repl_of[i] >= 0)
      continue;
    AtomToken &a = out.atoms[remap[i]];
    for (int &ref: a.stereo_refs)
      if (ref >= 0)
        ref = remap[ref];
  }
  for (const Bond &b: g.bonds) {
    Bond nb = b;
    nb.a = remap[b.a];
    nb.b = remap[b.b];
    if (nb.a == nb.b)
      throw GraphError("splice would bond an atom to itself");
    if (nb.stereo != BondStereo::kNone)
      for (int &ref: nb.stereo_refs)
        if (ref >= 0)
          ref = remap[ref];
    if (repl_of[b.a] >= 0 || repl_of[b.b] >= 0) {
      // Fragment atoms carry no wedge context relative to the scaffold.
      if (repl_of[b.a] >= 0 && nb.wedge != Wedge::kNone)
        nb.wedge = Wedge::kNone;
    }
    if (out.find_bond(nb.a, nb.b) >= 0)
      throw GraphError("splice creates a duplicate bond between atoms "
                       + std::to_string(nb.a) + " and "
                       + std::to_string(nb.b));
    out.bonds.push_back(nb);
  }
  return out;
}

MolecularGraph permute_atoms(const MolecularGraph &g, std::span<const int> perm) {
  const int n = g.atom_count();
  if (static_cast<int>(perm.size()) != n)
    throw GraphError("permutation size does not match atom count");
  std::vector<bool> hit(n, false);
  for (int p: perm) {
    if (p < 0 || p >= n || hit[p])
      throw GraphError("not a permutation");
    hit[p] = true;
  }
  auto map = [&](int r) { return r >= 0 ? perm[r] : r; };
  MolecularGraph out;
  out.label = g.label;
  out.role = g.role;
  out.atoms.resize(n);
  for (int i = 0; i < n; ++i) {
    AtomToken a = g.atoms[i];
    for (int &r: a.stereo_refs)
      r = map(r);
    out.atoms[perm[i]] = std::move(a);
  }
  for (const Bond &b: g.bonds) {
    Bond nb = b;
    nb.a = perm[b.a];
    nb.b = perm[b.b];
    if (nb.stereo != BondStereo::kNone)
      nb.stereo_refs = { map(b.stereo_refs[0]), map(b.stereo_refs[1]) };
    out.bonds.push_back(nb);
  }
  return out;
}

std::string placeholder_label(const AtomToken &atom) {
  std::string_view t = atom.text;
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']')
    t = t.substr(1, t.size() - 2);
  return std::string(t);
}

bool is_placeholder_label(std::string_view text) {
  static constexpr std::string_view kPrefixes[] = {
    "Het", "Hal", "Ar", "R", "X", "Z", "G", "Q",
  };
  for (std::string_view p: kPrefixes) {
    if (text.substr(0, p.size()) != p)
      continue;
    std::string_view rest = text.substr(p.size());
    if (std::all_of(rest.begin(), rest.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      return true;
  }
  return false;
}

// Valence model ----------------------------------------------------------------

int bond_valence(const MolecularGraph &g, const Adjacency &adj, int atom) {
  int v = 0;
  bool any_aromatic = false;
  for (Neighbor nb: adj[atom]) {
    switch (g.bonds[nb.bond].order) {
    case BondOrder::kSingle: v += 1; break;
    case BondOrder::kDouble: v += 2; break;
    case BondOrder::kTriple: v += 3; break;
    case BondOrder::kAromatic:
      v += 1;
      any_aromatic = true;
      break;
    }
  }
  if (g.atoms[atom].aromatic && any_aromatic)
    v += 1;
  return v;
}

namespace {

bool is_pyrrole_type(std::string_view symbol) {
  return symbol == "N" || symbol == "O" || symbol == "S" || symbol == "P"
         || symbol == "Se";
}

}  // namespace

namespace internal {

// Bond valence with the aromatic extra unit dropped for heteroatoms that
// donate a lone pair instead of a double bond.
int effective_valence(const MolecularGraph &g, const Adjacency &adj, int atom,
                      int hydrogens) {
  const AtomToken &a = g.atoms[atom];
  int v = bond_valence(g, adj, atom);
  if (a.aromatic && is_pyrrole_type(a.text)) {
    auto allowed = allowed_valences(a.text, a.charge);
    bool has_extra = false;
    for (Neighbor nb: adj[atom])
      has_extra |= g.bonds[nb.bond].order == BondOrder::kAromatic;
    if (has_extra && allowed && !allowed->empty()
        && v + hydrogens > allowed->front())
      v -= 1;
  }
  return v;
}

int default_hydrogens(const MolecularGraph &g, const Adjacency &adj,
                      int atom) {
  const AtomToken &a = g.atoms[atom];
  if (!a.is_element() || a.text == "H")
    return 0;
  auto allowed = internal::allowed_valences(a.text, a.charge);
  if (!allowed)
    return 0;
  int v = internal::effective_valence(g, adj, atom, 0);
  for (int target: *allowed)
    if (target >= v)
      return target - v;
  return 0;
}

}  // namespace internal

int implicit_hydrogens(const MolecularGraph &g, const Adjacency &adj, int atom) {
  if (g.atoms[atom].explicit_h)
    return 0;
  return internal::default_hydrogens(g, adj, atom);
}

int hydrogen_count(const MolecularGraph &g, const Adjacency &adj, int atom) {
  const AtomToken &a = g.atoms[atom];
  if (a.explicit_h)
    return *a.explicit_h;
  return implicit_hydrogens(g, adj, atom);
}

// Enum spellings -------------------------------------------------------------

std::string_view to_string(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle: return "single";
  case BondOrder::kDouble: return "double";
  case BondOrder::kTriple: return "triple";
  case BondOrder::kAromatic: return "aromatic";
  }
  return "single";
}

std::string_view to_string(Wedge wedge) {
  switch (wedge) {
  case Wedge::kNone: return "none";
  case Wedge::kSolid: return "solid";
  case Wedge::kDashed: return "dashed";
  }
  return "none";
}

std::string_view to_string(MoleculeRole role) {
  switch (role) {
  case MoleculeRole::kReactant: return "reactant";
  case MoleculeRole::kProduct: return "product";
  case MoleculeRole::kReactantTemplate: return "reactant_template";
  case MoleculeRole::kProductTemplate: return "product_template";
  case MoleculeRole::kCondition: return "condition";
  case MoleculeRole::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(AtomKind kind) {
  switch (kind) {
  case AtomKind::kElement: return "element";
  case AtomKind::kPlaceholder: return "placeholder";
  case AtomKind::kAbbreviation: return "abbreviation";
  case AtomKind::kWildcard: return "wildcard";
  }
  return "element";
}

std::optional<BondOrder> bond_order_from_string(std::string_view s) {
  for (BondOrder o: { BondOrder::kSingle, BondOrder::kDouble,
                      BondOrder::kTriple, BondOrder::kAromatic })
    if (to_string(o) == s)
      return o;
  if (s == "1")
    return BondOrder::kSingle;
  if (s == "2")
    return BondOrder::kDouble;
  if (s == "3")
    return BondOrder::kTriple;
  return std::nullopt;
}

std::optional<Wedge> wedge_from_string(std::string_view s) {
  for (Wedge w: { Wedge::kNone, Wedge::kSolid, Wedge::kDashed })
    if (to_string(w) == s)
      return w;
  return std::nullopt;
}

std::optional<MoleculeRole> molecule_role_from_string(std::string_view s) {
  for (MoleculeRole r: { MoleculeRole::kReactant, MoleculeRole::kProduct,
                         MoleculeRole::kReactantTemplate,
                         MoleculeRole::kProductTemplate,
                         MoleculeRole::kCondition, MoleculeRole::kUnknown })
    if (to_string(r) == s)
      return r;
  return std::nullopt;
}

// JSON form ------------------------------------------------------------------

namespace {

// Reference order used by the JSON chirality convention: lowest neighbor,
// then the implicit hydrogen, then remaining neighbors ascending.
std::vector<int> json_reference_order(const Adjacency &adj, int atom,
                                      bool with_h) {
  std::vector<int> nbrs;
  for (Neighbor nb: adj[atom])
    nbrs.push_back(nb.atom);
  std::sort(nbrs.begin(), nbrs.end());
  std::vector<int> order;
  if (!nbrs.empty())
    order.push_back(nbrs.front());
  if (with_h)
    order.push_back(kImplicitHydrogen);
  for (std::size_t i = 1; i < nbrs.size(); ++i)
    order.push_back(nbrs[i]);
  return order;
}

template <typename T>
std::optional<T> optional_field(const nlohmann::json &j, const char *key,
                                const std::string &path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw DecodeError(path + "." + key, e.what());
  }
}

}  // namespace

nlohmann::json graph_to_json(const MolecularGraph &g) {
  using nlohmann::json;
  Adjacency adj(g);
  json atoms = json::array();
  for (int i = 0; i < g.atom_count(); ++i) {
    const AtomToken &a = g.atoms[i];
    json ja = json::object();
    std::string symbol;
    if (a.is_element() && a.chirality != Chirality::kNone) {
      int h = hydrogen_count(g, adj, i);
      auto order = json_reference_order(adj, i, h > 0);
      Chirality c = internal::reorder_chirality(a.chirality, a.stereo_refs,
                                                order);
      AtomToken plain = a;
      plain.charge = 0;
      plain.isotope.reset();
      symbol = internal::format_atom(plain, h, c, false);
    } else if (a.is_element()) {
      symbol = a.text;
      if (a.aromatic)
        symbol[0] = static_cast<char>(std::tolower(symbol[0]));
    } else if (a.kind == AtomKind::kAbbreviation) {
      symbol = "[" + a.text + "]";
    } else {
      symbol = a.text;
    }
    ja["symbol"] = symbol;
    ja["charge"] = a.charge;
    if (a.explicit_h)
      ja["h"] = *a.explicit_h;
    if (a.isotope)
      ja["isotope"] = *a.isotope;
    if (a.coords) {
      ja["x"] = a.coords->x;
      ja["y"] = a.coords->y;
    }
    atoms.push_back(std::move(ja));
  }
  json bonds = json::array();
  for (const Bond &b: g.bonds) {
    json jb = { { "a", b.a }, { "b", b.b }, { "order", to_string(b.order) },
                { "wedge", to_string(b.wedge) } };
    if (b.stereo != BondStereo::kNone) {
      jb["stereo"] = b.stereo == BondStereo::kCis ? "cis" : "trans";
      jb["stereo_atoms"] = { b.stereo_refs[0], b.stereo_refs[1] };
    }
    bonds.push_back(std::move(jb));
  }
  json out = { { "atoms", std::move(atoms) }, { "bonds", std::move(bonds) } };
  if (g.label)
    out["label"] = *g.label;
  if (g.role)
    out["role"] = to_string(*g.role);
  return out;
}

MolecularGraph graph_from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw DecodeError("$", "graph must be a JSON object");
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw DecodeError("atoms", "missing atom list");

  MolecularGraph g;
  std::vector<bool> chiral_from_symbol;
  const auto &atoms = j["atoms"];
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto &ja = atoms[i];
    std::string path = "atoms[" + std::to_string(i) + "]";
    auto symbol = optional_field<std::string>(ja, "symbol", path);
    if (!symbol || symbol->empty())
      throw DecodeError(path + ".symbol", "missing atom symbol");

    AtomToken a;
    const std::string &s = *symbol;
    if (s.front() == '[' && s.back() == ']') {
      a = internal::parse_bracket_atom(std::string_view(s).substr(1, s.size() - 2),
                                       1);
      if (a.kind == AtomKind::kAbbreviation)
        a.text = s.substr(1, s.size() - 2);
    } else if (s == "*") {
      a = AtomToken::wildcard();
    } else if (internal::is_element_symbol(s)) {
      a = AtomToken::element(s);
    } else if (std::islower(static_cast<unsigned char>(s[0]))) {
      std::string up = s;
      up[0] = static_cast<char>(std::toupper(up[0]));
      if (internal::is_element_symbol(up) && internal::is_aromatic_capable(up))
        a = AtomToken::element(up, true);
      else
        a = AtomToken::abbreviation(s);
    } else if (is_placeholder_label(s)) {
      a = AtomToken::placeholder(s);
    } else {
      a = AtomToken::abbreviation(s);
    }
    chiral_from_symbol.push_back(a.chirality != Chirality::kNone);

    if (auto c = optional_field<int>(ja, "charge", path))
      a.charge = *c;
    if (auto h = optional_field<int>(ja, "h", path))
      a.explicit_h = *h;
    if (auto iso = optional_field<int>(ja, "isotope", path))
      a.isotope = *iso;
    auto x = optional_field<double>(ja, "x", path);
    auto y = optional_field<double>(ja, "y", path);
    if (x && y)
      a.coords = Point2 { *x, *y };
    else if (x || y)
      throw DecodeError(path, "coordinates need both x and y");
    g.atoms.push_back(std::move(a));
  }

  if (j.contains("bonds")) {
    if (!j["bonds"].is_array())
      throw DecodeError("bonds", "bond list must be an array");
    const auto &bonds = j["bonds"];
    for (std::size_t i = 0; i < bonds.size(); ++i) {
      const auto &jb = bonds[i];
      std::string path = "bonds[" + std::to_string(i) + "]";
      auto a = optional_field<int>(jb, "a", path);
      auto b = optional_field<int>(jb, "b", path);
      if (!a || !b)
        throw DecodeError(path, "bond needs endpoints a and b");
      Bond bond;
      bond.a = *a;
      bond.b = *b;
      if (auto o = optional_field<std::string>(jb, "order", path)) {
        auto order = bond_order_from_string(*o);
        if (!order)
          throw DecodeError(path + ".order", "unknown bond order '" + *o + "'");
        bond.order = *order;
      } else if (auto oi = optional_field<int>(jb, "order", path)) {
        if (*oi < 1 || *oi > 3)
          throw DecodeError(path + ".order", "bond order out of range");
        bond.order = static_cast<BondOrder>(*oi - 1);
      }
      if (auto w = optional_field<std::string>(jb, "wedge", path)) {
        auto wedge = wedge_from_string(*w);
        if (!wedge)
          throw DecodeError(path + ".wedge", "unknown wedge '" + *w + "'");
        bond.wedge = *wedge;
      }
      if (auto st = optional_field<std::string>(jb, "stereo", path)) {
        if (*st == "cis")
          bond.stereo = BondStereo::kCis;
        else if (*st == "trans")
          bond.stereo = BondStereo::kTrans;
        else if (*st != "none")
          throw DecodeError(path + ".stereo", "unknown stereo '" + *st + "'");
        if (bond.stereo != BondStereo::kNone) {
          auto refs = optional_field<std::vector<int>>(jb, "stereo_atoms",
                                                       path);
          if (!refs || refs->size() != 2)
            throw DecodeError(path + ".stereo_atoms",
                              "cis/trans needs two reference atoms");
          bond.stereo_refs = { (*refs)[0], (*refs)[1] };
        }
      }
      g.bonds.push_back(bond);
    }
  }

  for (const Bond &b: g.bonds)
    if (b.a < 0 || b.a >= g.atom_count() || b.b < 0 || b.b >= g.atom_count())
      throw DecodeError("bonds", "bond endpoint out of range");

  Adjacency adj(g);
  for (int i = 0; i < g.atom_count(); ++i) {
    if (!chiral_from_symbol[i])
      continue;
    AtomToken &a = g.atoms[i];
    int h = hydrogen_count(g, adj, i);
    auto order = json_reference_order(adj, i, h > 0);
    if (order.size() < 3 || order.size() > 4) {
      a.chirality = Chirality::kNone;
      continue;
    }
    a.stereo_refs = std::move(order);
  }

  if (auto label = optional_field<std::string>(j, "label", "$"))
    g.label = *label;
  if (auto role = optional_field<std::string>(j, "role", "$")) {
    auto r = molecule_role_from_string(*role);
    if (!r)
      throw DecodeError("role", "unknown molecule role '" + *role + "'");
    g.role = *r;
  }
  return g;
}

}  // namespace rxnscope
