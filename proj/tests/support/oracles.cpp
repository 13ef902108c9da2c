//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rxnscope::testing {
namespace {

bool aryl_label(const AtomToken &a) {
  return a.text.rfind("[Ar", 0) == 0;
}

bool label_ok(const AtomToken &p, const AtomToken &t) {
  if (p.kind == AtomKind::kPlaceholder)
    return !aryl_label(p) || t.aromatic;
  if (p.kind == AtomKind::kWildcard)
    return !p.isotope || (t.kind == AtomKind::kWildcard && t.isotope == p.isotope);
  return p.kind == t.kind && p.text == t.text && p.charge == t.charge
         && p.aromatic == t.aromatic;
}

const Bond *bond_between(const MolecularGraph &g, int x, int y) {
  for (const Bond &b: g.bonds)
    if ((b.a == x && b.b == y) || (b.a == y && b.b == x))
      return &b;
  return nullptr;
}

bool order_ok(const MolecularGraph &p, const Bond &pb, const MolecularGraph &t,
              const Bond &tb) {
  if (pb.order == tb.order)
    return true;
  auto relaxed = [](BondOrder o) {
    return o == BondOrder::kSingle || o == BondOrder::kAromatic;
  };
  bool placeholder = p.atoms[pb.a].kind == AtomKind::kPlaceholder
                     || p.atoms[pb.b].kind == AtomKind::kPlaceholder
                     || t.atoms[tb.a].kind == AtomKind::kPlaceholder
                     || t.atoms[tb.b].kind == AtomKind::kPlaceholder;
  return placeholder && relaxed(pb.order) && relaxed(tb.order);
}

void extend(const MolecularGraph &p, const MolecularGraph &t,
            std::vector<int> &map, std::vector<bool> &used,
            std::vector<std::vector<int>> &out) {
  std::size_t k = map.size();
  if (k == p.atoms.size()) {
    for (const Bond &pb: p.bonds) {
      const Bond *tb = bond_between(t, map[pb.a], map[pb.b]);
      if (!tb || !order_ok(p, pb, t, *tb))
        return;
    }
    out.push_back(map);
    return;
  }
  for (int c = 0; c < t.atom_count(); ++c) {
    if (used[c] || !label_ok(p.atoms[k], t.atoms[c]))
      continue;
    used[c] = true;
    map.push_back(c);
    extend(p, t, map, used, out);
    map.pop_back();
    used[c] = false;
  }
}

using Vec = std::array<double, 3>;

Vec rotate(const Vec &v, double a, double b, double c) {
  // z-y-x Euler rotation
  auto rx = [](const Vec &u, double t) {
    return Vec { u[0], u[1] * std::cos(t) - u[2] * std::sin(t),
                 u[1] * std::sin(t) + u[2] * std::cos(t) };
  };
  auto ry = [](const Vec &u, double t) {
    return Vec { u[0] * std::cos(t) + u[2] * std::sin(t), u[1],
                 -u[0] * std::sin(t) + u[2] * std::cos(t) };
  };
  auto rz = [](const Vec &u, double t) {
    return Vec { u[0] * std::cos(t) - u[1] * std::sin(t),
                 u[0] * std::sin(t) + u[1] * std::cos(t), u[2] };
  };
  return rx(ry(rz(v, a), b), c);
}

}  // namespace

std::vector<std::vector<int>> brute_force_matches(const MolecularGraph &pattern,
                                                  const MolecularGraph &target) {
  std::vector<std::vector<int>> out;
  std::vector<int> map;
  std::vector<bool> used(target.atoms.size(), false);
  extend(pattern, target, map, used, out);
  return out;
}

double signed_volume(const Vec &a, const Vec &b, const Vec &c, const Vec &d) {
  Vec u { b[0] - a[0], b[1] - a[1], b[2] - a[2] };
  Vec v { c[0] - a[0], c[1] - a[1], c[2] - a[2] };
  Vec w { d[0] - a[0], d[1] - a[1], d[2] - a[2] };
  return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
         + u[2] * (v[0] * w[1] - v[1] * w[0]);
}

WedgeDrawing random_wedge_drawing(std::mt19937_64 &rng, bool implicit_h) {
  static const char *kSubstituents[] = { "F", "Cl", "Br", "I" };
  const double s = 1.0 / std::sqrt(3.0);
  const Vec kTetra[4] = { { s, s, s }, { s, -s, -s }, { -s, s, -s },
                          { -s, -s, s } };
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);

  for (;;) {
    double a = angle(rng), b = angle(rng), c = angle(rng);
    Vec pos[4];
    for (int i = 0; i < 4; ++i)
      pos[i] = rotate(kTetra[i], a, b, c);

    // Vertex order in the drawing: a random permutation of substituents.
    std::array<int, 4> perm { 0, 1, 2, 3 };
    std::shuffle(perm.begin(), perm.end(), rng);
    int drawn = implicit_h ? 3 : 4;

    // Reject projections where drawn bonds are short or nearly collinear,
    // where a plain bond leaves the page noticeably, or with no wedge.
    bool ok = true;
    int wedges = 0;
    for (int i = 0; i < drawn && ok; ++i) {
      const Vec &p = pos[perm[i]];
      double len = std::hypot(p[0], p[1]);
      if (len < 0.45)
        ok = false;
      if (std::abs(p[2]) > 0.35)
        ++wedges;
      else if (std::abs(p[2]) > 0.15)
        ok = false;
      for (int j = 0; j < i && ok; ++j) {
        const Vec &q = pos[perm[j]];
        double cosang = (p[0] * q[0] + p[1] * q[1])
                        / (len * std::hypot(q[0], q[1]));
        if (cosang > std::cos(25.0 * std::numbers::pi / 180.0))
          ok = false;
      }
    }
    if (!ok || wedges == 0)
      continue;

    WedgeDrawing d;
    MolecularGraph &g = d.graph;
    AtomToken center = AtomToken::element("C");
    center.coords = Point2 { 0, 0 };
    g.add_atom(center);
    for (int i = 0; i < drawn; ++i) {
      const Vec &p = pos[perm[i]];
      AtomToken t = AtomToken::element(kSubstituents[i]);
      t.coords = Point2 { p[0], p[1] };
      int idx = g.add_atom(t);
      int bond = g.add_bond(0, idx);
      if (p[2] > 0.35)
        g.bonds[bond].wedge = Wedge::kSolid;
      else if (p[2] < -0.35)
        g.bonds[bond].wedge = Wedge::kDashed;
    }

    // SMILES "C(n1)(n2)(n3)(n4)": viewed from n1, n2..n4 anticlockwise is
    // '@', which is a negative signed volume of (n1, n2, n3, n4). With an
    // implicit hydrogen the order is H, n1, n2, n3.
    std::vector<Vec> order;
    if (implicit_h)
      order.push_back(pos[perm[3]]);
    for (int i = 0; i < drawn; ++i)
      order.push_back(pos[perm[i]]);
    double vol = signed_volume(order[0], order[1], order[2], order[3]);
    std::string mark = vol < 0 ? "@" : "@@";
    std::string smiles = "[C" + mark + (implicit_h ? "H" : "") + "]";
    for (int i = 0; i < drawn; ++i)
      smiles += std::string("(") + kSubstituents[i] + ")";
    d.expected_smiles = smiles;
    return d;
  }
}

MolecularGraph mirror_drawing(const MolecularGraph &g) {
  MolecularGraph m = g;
  for (AtomToken &a: m.atoms)
    if (a.coords)
      a.coords->y = -a.coords->y;
  return m;
}

MolecularGraph flip_wedges(const MolecularGraph &g) {
  MolecularGraph m = g;
  for (Bond &b: m.bonds) {
    if (b.wedge == Wedge::kSolid)
      b.wedge = Wedge::kDashed;
    else if (b.wedge == Wedge::kDashed)
      b.wedge = Wedge::kSolid;
  }
  return m;
}

std::vector<std::vector<int>> simple_paths(const MolecularGraph &g,
                                           int max_bonds) {
  std::vector<std::vector<int>> adj(g.atoms.size());
  for (const Bond &b: g.bonds) {
    adj[b.a].push_back(b.b);
    adj[b.b].push_back(b.a);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<bool> on(g.atoms.size(), false);
  auto walk = [&](auto &self, int u) -> void {
    path.push_back(u);
    on[u] = true;
    // Keep each undirected path once: first atom below last atom, or a
    // single atom.
    if (path.size() == 1 || path.front() < path.back())
      out.push_back(path);
    if (static_cast<int>(path.size()) - 1 < max_bonds)
      for (int v: adj[u])
        if (!on[v])
          self(self, v);
    on[u] = false;
    path.pop_back();
  };
  for (int s = 0; s < g.atom_count(); ++s)
    walk(walk, s);
  return out;
}

}  // namespace rxnscope::testing
