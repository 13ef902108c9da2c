//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cmath>

#include "rxnscope/chemops.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"

namespace rxnscope {
namespace {

constexpr double kEpsilon = 1e-6;

using Vec3 = std::array<double, 3>;

double det3(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1])
         - a[1] * (b[0] * c[2] - b[2] * c[0])
         + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Vec3 sub(const Vec3 &a, const Vec3 &b) {
  return { a[0] - b[0], a[1] - b[1], a[2] - b[2] };
}

// Signed volume of the four substituent tips; negative means the last three
// run anticlockwise when viewed from the first.
double signed_volume(const std::array<Vec3, 4> &v) {
  return det3(sub(v[1], v[0]), sub(v[2], v[0]), sub(v[3], v[0]));
}

double z_of(Wedge w) {
  switch (w) {
  case Wedge::kSolid: return 1.0;
  case Wedge::kDashed: return -1.0;
  default: return 0.0;
  }
}

struct Spoke {
  int ref;       // neighbor atom or kImplicitHydrogen
  double x, y;   // unit direction in the drawing plane
  Wedge wedge;
};

// Tag from the given spokes using only the wedges selected by `use`.
// Returns kNone for a degenerate arrangement.
Chirality tag_from(const std::vector<Spoke> &spokes,
                   const std::vector<bool> &use) {
  std::array<Vec3, 4> v {};
  int implicit = -1;
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    if (spokes[i].ref == kImplicitHydrogen) {
      implicit = static_cast<int>(i);
      continue;
    }
    v[i] = { spokes[i].x, spokes[i].y, use[i] ? z_of(spokes[i].wedge) : 0.0 };
  }
  if (implicit >= 0) {
    Vec3 sum { 0, 0, 0 };
    for (std::size_t i = 0; i < spokes.size(); ++i)
      if (static_cast<int>(i) != implicit)
        for (int k = 0; k < 3; ++k)
          sum[k] += v[i][k];
    v[implicit] = { -sum[0], -sum[1], -sum[2] };
  }
  double vol = signed_volume(v);
  if (std::abs(vol) < kEpsilon)
    return Chirality::kNone;
  return vol < 0 ? Chirality::kCcw : Chirality::kCw;
}

void require_coords(const MolecularGraph &g, int atom) {
  if (!g.atoms[atom].coords)
    throw StereoError("wedge bond touches atom " + std::to_string(atom)
                      + ", which has no coordinates");
}

}  // namespace

StereoPerception perceive_stereo(const MolecularGraph &g) {
  StereoPerception out { g, {} };
  MolecularGraph &m = out.graph;
  Adjacency adj(g);

  for (const Bond &b: g.bonds) {
    if (b.wedge == Wedge::kNone)
      continue;
    require_coords(g, b.a);
    require_coords(g, b.b);
  }

  std::vector<int> classes = symmetry_classes(g);

  for (int x = 0; x < g.atom_count(); ++x) {
    std::vector<Spoke> spokes;
    std::vector<bool> wedged;
    bool any_wedge = false;
    bool coords_ok = g.atoms[x].coords.has_value();
    for (Neighbor nb: adj[x]) {
      const Bond &b = g.bonds[nb.bond];
      Wedge w = b.a == x ? b.wedge : Wedge::kNone;
      any_wedge |= w != Wedge::kNone;
      if (!g.atoms[nb.atom].coords || !coords_ok) {
        coords_ok = false;
        continue;
      }
      double dx = g.atoms[nb.atom].coords->x - g.atoms[x].coords->x;
      double dy = g.atoms[nb.atom].coords->y - g.atoms[x].coords->y;
      double len = std::hypot(dx, dy);
      if (len < kEpsilon) {
        coords_ok = false;
        continue;
      }
      spokes.push_back({ nb.atom, dx / len, dy / len, w });
      wedged.push_back(w != Wedge::kNone);
    }
    if (!any_wedge)
      continue;

    AtomToken &atom = m.atoms[x];
    atom.chirality = Chirality::kNone;
    atom.stereo_refs.clear();
    if (!coords_ok) {
      out.warnings.push_back({ x, "neighbor without coordinates; center left "
                                  "untagged" });
      continue;
    }
    int h = hydrogen_count(g, adj, x);
    if (spokes.size() + h != 4 || spokes.size() < 3) {
      out.warnings.push_back({ x, "wedge on an atom that is not a "
                                  "four-substituent center" });
      continue;
    }
    std::sort(spokes.begin(), spokes.end(),
              [](const Spoke &p, const Spoke &q) { return p.ref < q.ref; });
    if (h == 1)
      spokes.insert(spokes.begin() + 1,
                    Spoke { kImplicitHydrogen, 0, 0, Wedge::kNone });
    std::vector<int> ref_classes;
    for (const Spoke &s: spokes)
      ref_classes.push_back(s.ref == kImplicitHydrogen ? -1 : classes[s.ref]);
    std::sort(ref_classes.begin(), ref_classes.end());
    if (std::adjacent_find(ref_classes.begin(), ref_classes.end())
        != ref_classes.end())
      continue;

    // Each wedge on its own must agree with every other. Not for an
    // implicit hydrogen: its lifted position depends on every wedge at once.
    std::vector<bool> all(spokes.size(), false);
    Chirality agreed = Chirality::kNone;
    bool conflict = false;
    for (std::size_t i = 0; i < spokes.size(); ++i) {
      if (spokes[i].wedge == Wedge::kNone)
        continue;
      all[i] = true;
      if (h > 0)
        continue;
      std::vector<bool> only(spokes.size(), false);
      only[i] = true;
      Chirality c = tag_from(spokes, only);
      if (c == Chirality::kNone)
        continue;
      if (agreed != Chirality::kNone && c != agreed)
        conflict = true;
      agreed = c;
    }
    if (conflict) {
      out.warnings.push_back({ x, "conflicting wedges; center left "
                                  "untagged" });
      continue;
    }
    Chirality c = tag_from(spokes, all);
    if (c == Chirality::kNone) {
      out.warnings.push_back({ x, "degenerate wedge geometry; center left "
                                  "untagged" });
      continue;
    }
    atom.chirality = c;
    for (const Spoke &s: spokes)
      atom.stereo_refs.push_back(s.ref);
  }

  auto in_ring = ring_bonds(g);
  for (int bi = 0; bi < g.bond_count(); ++bi) {
    const Bond &b = g.bonds[bi];
    if (b.order != BondOrder::kDouble || in_ring[bi])
      continue;
    std::array<int, 2> refs { -1, -1 };
    bool ok = g.atoms[b.a].coords && g.atoms[b.b].coords;
    for (int end = 0; end < 2 && ok; ++end) {
      int d = end == 0 ? b.a : b.b;
      std::vector<int> subs;
      for (Neighbor nb: adj[d])
        if (nb.atom != b.other(d))
          subs.push_back(nb.atom);
      if (subs.empty() || subs.size() > 2) {
        ok = false;
        break;
      }
      std::sort(subs.begin(), subs.end());
      if (subs.size() == 2 && classes[subs[0]] == classes[subs[1]])
        ok = false;
      for (int s: subs)
        ok = ok && g.atoms[s].coords.has_value();
      refs[end] = subs[0];
    }
    if (!ok)
      continue;
    const Point2 &pa = *g.atoms[b.a].coords;
    const Point2 &pb = *g.atoms[b.b].coords;
    auto cross = [&](int r) {
      const Point2 &pr = *g.atoms[r].coords;
      return (pb.x - pa.x) * (pr.y - pa.y) - (pb.y - pa.y) * (pr.x - pa.x);
    };
    double s1 = cross(refs[0]);
    double s2 = cross(refs[1]);
    if (std::abs(s1) < kEpsilon || std::abs(s2) < kEpsilon)
      continue;
    Bond &mb = m.bonds[bi];
    mb.stereo = (s1 > 0) == (s2 > 0) ? BondStereo::kCis : BondStereo::kTrans;
    mb.stereo_refs = refs;
  }
  return out;
}

}  // namespace rxnscope
