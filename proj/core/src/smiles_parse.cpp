//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <optional>

#include "elements.hpp"
#include "rxnscope/error.hpp"
#include "rxnscope/smiles.hpp"
#include "smiles_internal.hpp"

namespace rxnscope {
namespace internal {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Aromatic spellings allowed inside brackets.
std::optional<std::string> aromatic_symbol(std::string_view s) {
  static constexpr std::array<std::string_view, 8> kTable {
    "se", "as", "c", "n", "o", "s", "p", "b",
  };
  for (std::string_view a: kTable) {
    if (s.substr(0, a.size()) == a) {
      std::string up(a);
      up[0] = static_cast<char>(std::toupper(up[0]));
      return up;
    }
  }
  return std::nullopt;
}

// Strict element bracket grammar; nullopt when `content` is not an element
// atom.
std::optional<AtomToken> parse_element_bracket(std::string_view content) {
  std::size_t i = 0;
  std::optional<int> isotope;
  if (i < content.size() && is_digit(content[i])) {
    int v = 0;
    while (i < content.size() && is_digit(content[i]))
      v = v * 10 + (content[i++] - '0');
    isotope = v;
  }
  if (i >= content.size())
    return std::nullopt;

  AtomToken atom;
  if (content[i] == '*') {
    atom = AtomToken::wildcard();
    ++i;
  } else if (is_upper(content[i])) {
    std::string sym(1, content[i]);
    if (i + 1 < content.size() && is_lower(content[i + 1])
        && is_element_symbol(sym + content[i + 1])) {
      sym += content[i + 1];
    }
    if (!is_element_symbol(sym))
      return std::nullopt;
    i += sym.size();
    atom = AtomToken::element(sym);
  } else if (auto arom = aromatic_symbol(content.substr(i))) {
    i += arom->size();
    atom = AtomToken::element(*arom, true);
  } else {
    return std::nullopt;
  }
  atom.isotope = isotope;

  if (i < content.size() && content[i] == '@') {
    ++i;
    atom.chirality = Chirality::kCcw;
    if (i < content.size() && content[i] == '@') {
      ++i;
      atom.chirality = Chirality::kCw;
    }
  }
  if (atom.is_element())
    atom.explicit_h = 0;
  if (i < content.size() && content[i] == 'H') {
    ++i;
    int h = 1;
    if (i < content.size() && is_digit(content[i]))
      h = content[i++] - '0';
    atom.explicit_h = h;
  }
  if (i < content.size() && (content[i] == '+' || content[i] == '-')) {
    char sign = content[i++];
    int magnitude = 1;
    if (i < content.size() && is_digit(content[i])) {
      magnitude = 0;
      while (i < content.size() && is_digit(content[i]))
        magnitude = magnitude * 10 + (content[i++] - '0');
    } else {
      while (i < content.size() && content[i] == sign) {
        ++magnitude;
        ++i;
      }
    }
    atom.charge = sign == '+' ? magnitude : -magnitude;
  }
  if (i < content.size() && content[i] == ':') {
    ++i;
    if (i >= content.size() || !is_digit(content[i]))
      return std::nullopt;
    while (i < content.size() && is_digit(content[i]))
      ++i;
  }
  if (i != content.size())
    return std::nullopt;
  return atom;
}

bool undecorated_override(std::string_view content) {
  // Symbols that collide with element names but are read as group labels
  // when written bare.
  return content == "Ts" || content == "Ac" || content == "Pr";
}

}  // namespace

AtomToken parse_bracket_atom(std::string_view content, std::size_t offset) {
  if (content.empty())
    throw SmilesParseError(offset, "empty bracket atom");
  if (content == "Ar")
    return AtomToken::placeholder(content);
  if (!undecorated_override(content))
    if (auto atom = parse_element_bracket(content))
      return *atom;
  if (is_placeholder_label(content))
    return AtomToken::placeholder(content);
  for (char c: content)
    if (c == '[' || c == ']' || c == '(' || c == ')' || std::isspace(
            static_cast<unsigned char>(c)))
      throw SmilesParseError(offset, "malformed bracket atom");
  return AtomToken::abbreviation(std::string(content));
}

int permutation_parity(std::span<const int> from, std::span<const int> to) {
  if (from.size() != to.size())
    return -1;
  std::vector<int> pos;
  pos.reserve(from.size());
  for (int x: from) {
    auto it = std::find(to.begin(), to.end(), x);
    if (it == to.end())
      return -1;
    pos.push_back(static_cast<int>(it - to.begin()));
  }
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return -1;
  int swaps = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    while (pos[i] != static_cast<int>(i)) {
      std::swap(pos[i], pos[pos[i]]);
      ++swaps;
    }
  }
  return swaps % 2;
}

Chirality reorder_chirality(Chirality c, std::span<const int> refs,
                            std::span<const int> order) {
  int parity = permutation_parity(refs, order);
  if (parity < 0)
    return Chirality::kNone;
  return parity == 1 ? flip(c) : c;
}

}  // namespace internal

// Rings and aromaticity ------------------------------------------------------

std::vector<bool> ring_bonds(const MolecularGraph &g) {
  Adjacency adj(g);
  const int n = g.atom_count();
  std::vector<bool> ring(g.bonds.size(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  // Iterative bridge finding; a bond is a ring bond iff it is not a bridge.
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0)
      continue;
    std::vector<Frame> stack { { s, -1, 0 } };
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbrs = adj[f.atom];
      if (f.next < nbrs.size()) {
        Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          int parent = stack.back().atom;
          low[parent] = std::min(low[parent], low[done.atom]);
        }
      }
    }
  }
  for (int i = 0; i < g.bond_count(); ++i) {
    const Bond &b = g.bonds[i];
    if (b.a == b.b)
      continue;
    int child = disc[b.a] > disc[b.b] ? b.a : b.b;
    int parent = b.other(child);
    // Tree edge parent->child is a bridge iff low[child] > disc[parent].
    ring[i] = !(low[child] > disc[parent]);
  }
  // Non-tree edges are always ring bonds; the test above already holds for
  // them because low[child] <= disc[parent] through the edge itself.
  return ring;
}

namespace {

std::vector<std::vector<int>> six_rings(const MolecularGraph &g,
                                        const Adjacency &adj,
                                        const std::vector<bool> &in_ring) {
  std::vector<std::vector<int>> rings;
  const int n = g.atom_count();
  std::vector<int> path;
  std::vector<bool> on_path(n, false);
  std::function<void(int, int)> extend = [&](int start, int u) {
    if (path.size() == 6) {
      if (g.find_bond(u, start) >= 0 && in_ring[g.find_bond(u, start)]
          && path[1] < path[5])
        rings.push_back(path);
      return;
    }
    for (Neighbor nb: adj[u]) {
      if (!in_ring[nb.bond] || nb.atom <= start || on_path[nb.atom])
        continue;
      on_path[nb.atom] = true;
      path.push_back(nb.atom);
      extend(start, nb.atom);
      path.pop_back();
      on_path[nb.atom] = false;
    }
  };
  for (int s = 0; s < n; ++s) {
    path = { s };
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  return rings;
}

bool ring_element(const AtomToken &a) {
  if (!a.is_element())
    return false;
  if (a.text == "C")
    return a.charge == 0;
  return a.text == "N";
}

}  // namespace

void perceive_aromaticity(MolecularGraph &g) {
  Adjacency adj(g);
  auto in_ring = ring_bonds(g);
  auto rings = six_rings(g, adj, in_ring);

  bool changed = true;
  std::vector<bool> done(rings.size(), false);
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < rings.size(); ++r) {
      if (done[r])
        continue;
      const auto &ring = rings[r];
      std::array<int, 6> ring_bond_ids {};
      bool ok = true;
      for (int k = 0; k < 6 && ok; ++k) {
        int bi = g.find_bond(ring[k], ring[(k + 1) % 6]);
        ring_bond_ids[k] = bi;
        ok = bi >= 0 && g.bonds[bi].order != BondOrder::kTriple;
      }
      for (int k = 0; k < 6 && ok; ++k) {
        int atom = ring[k];
        if (!ring_element(g.atoms[atom])) {
          ok = false;
          break;
        }
        if (g.atoms[atom].aromatic)
          continue;
        int doubles = 0;
        bool in_ring_double = false;
        for (Neighbor nb: adj[atom]) {
          if (g.bonds[nb.bond].order != BondOrder::kDouble)
            continue;
          ++doubles;
          if (std::find(ring_bond_ids.begin(), ring_bond_ids.end(), nb.bond)
              != ring_bond_ids.end())
            in_ring_double = true;
        }
        ok = doubles == 1 && in_ring_double;
      }
      if (!ok)
        continue;
      bool all_aromatic = true;
      for (int k = 0; k < 6; ++k)
        all_aromatic &= g.bonds[ring_bond_ids[k]].order == BondOrder::kAromatic
                        && g.atoms[ring[k]].aromatic;
      done[r] = true;
      if (all_aromatic)
        continue;
      for (int k = 0; k < 6; ++k) {
        g.atoms[ring[k]].aromatic = true;
        Bond &b = g.bonds[ring_bond_ids[k]];
        b.order = BondOrder::kAromatic;
        b.stereo = BondStereo::kNone;
        b.stereo_refs = { -1, -1 };
      }
      changed = true;
    }
  }
}

// Parser ---------------------------------------------------------------------

namespace {

struct PendingBond {
  std::optional<BondOrder> order;
  int mark = 0;  // +1 for '/', -1 for '\'
  std::size_t offset = 0;
};

struct RingOpen {
  int atom;
  PendingBond bond;
  std::size_t slot;
  std::size_t offset;
};

struct Mark {
  int from;
  int to;
  int dir;
};

class Parser {
public:
  explicit Parser(std::string_view s): s_(s) { }

  MolecularGraph run() {
    if (s_.empty())
      throw SmilesParseError(0, "empty SMILES");
    std::size_t i = 0;
    std::vector<int> branch_stack;
    std::vector<std::size_t> branch_offsets;
    int prev = -1;
    std::optional<PendingBond> pending;

    while (i < s_.size()) {
      char c = s_[i];
      if (c == '(') {
        if (prev < 0)
          throw SmilesParseError(i, "branch without a preceding atom");
        if (pending)
          throw SmilesParseError(i, "bond symbol before branch");
        branch_stack.push_back(prev);
        branch_offsets.push_back(i);
        ++i;
      } else if (c == ')') {
        if (branch_stack.empty())
          throw SmilesParseError(i, "unbalanced ')'");
        if (pending)
          throw SmilesParseError(i, "bond symbol at end of branch");
        if (i > 0 && s_[i - 1] == '(')
          throw SmilesParseError(i, "empty branch");
        prev = branch_stack.back();
        branch_stack.pop_back();
        branch_offsets.pop_back();
        ++i;
      } else if (c == '.') {
        if (pending)
          throw SmilesParseError(i, "bond symbol before '.'");
        if (!branch_stack.empty())
          throw SmilesParseError(i, "'.' inside a branch");
        prev = -1;
        ++i;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/'
                 || c == '\\' || c == '$') {
        if (pending)
          throw SmilesParseError(i, "two consecutive bond symbols");
        if (prev < 0)
          throw SmilesParseError(i, "bond symbol without a preceding atom");
        PendingBond pb;
        pb.offset = i;
        switch (c) {
        case '-': pb.order = BondOrder::kSingle; break;
        case '=': pb.order = BondOrder::kDouble; break;
        case '#': pb.order = BondOrder::kTriple; break;
        case ':': pb.order = BondOrder::kAromatic; break;
        case '/': pb.mark = 1; break;
        case '\\': pb.mark = -1; break;
        default:
          throw SmilesParseError(i, "quadruple bonds are not supported");
        }
        pending = pb;
        ++i;
      } else if (is_digit(c) || c == '%') {
        if (prev < 0)
          throw SmilesParseError(i, "ring closure without a preceding atom");
        int digit;
        std::size_t start = i;
        if (c == '%') {
          if (i + 2 >= s_.size() || !is_digit(s_[i + 1])
              || !is_digit(s_[i + 2]))
            throw SmilesParseError(i, "'%' needs two digits");
          digit = (s_[i + 1] - '0') * 10 + (s_[i + 2] - '0');
          i += 3;
        } else {
          digit = c - '0';
          ++i;
        }
        ring_digit(prev, digit, pending.value_or(PendingBond {}), start);
        pending.reset();
      } else {
        std::size_t start = i;
        AtomToken atom = read_atom(i);
        int idx = add_atom(std::move(atom), start);
        if (prev >= 0)
          connect(prev, idx, pending.value_or(PendingBond {}));
        pending.reset();
        if (bracket_h_[idx])
          written_[idx].push_back(kImplicitHydrogen);
        prev = idx;
      }
    }
    if (pending)
      throw SmilesParseError(pending->offset, "dangling bond symbol");
    if (!branch_stack.empty())
      throw SmilesParseError(branch_offsets.back(), "unbalanced '('");
    if (!rings_.empty()) {
      std::size_t off = rings_.begin()->second.offset;
      for (const auto &[d, r]: rings_)
        off = std::min(off, r.offset);
      throw SmilesParseError(off, "unmatched ring bond");
    }
    finish();
    return std::move(g_);
  }

private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  AtomToken read_atom(std::size_t &i) {
    char c = s_[i];
    if (c == '[') {
      std::size_t close = s_.find(']', i);
      if (close == std::string_view::npos)
        throw SmilesParseError(i, "unbalanced '['");
      std::size_t nested = s_.find('[', i + 1);
      if (nested != std::string_view::npos && nested < close)
        throw SmilesParseError(nested, "nested '['");
      AtomToken atom = internal::parse_bracket_atom(
          s_.substr(i + 1, close - i - 1), i);
      pending_bracket_h_ = atom.is_element() && atom.explicit_h.value_or(0) > 0;
      i = close + 1;
      return atom;
    }
    pending_bracket_h_ = false;
    if (c == '*') {
      ++i;
      return AtomToken::wildcard();
    }
    if (c == ']')
      throw SmilesParseError(i, "unbalanced ']'");
    if (c == 'C' && i + 1 < s_.size() && s_[i + 1] == 'l') {
      i += 2;
      return AtomToken::element("Cl");
    }
    if (c == 'B' && i + 1 < s_.size() && s_[i + 1] == 'r') {
      i += 2;
      return AtomToken::element("Br");
    }
    switch (c) {
    case 'B': case 'C': case 'N': case 'O': case 'P': case 'S': case 'F':
    case 'I':
      ++i;
      return AtomToken::element(std::string(1, c));
    case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
      ++i;
      return AtomToken::element(
          std::string(1, static_cast<char>(std::toupper(c))), true);
    default:
      throw SmilesParseError(i, std::string("unexpected character '") + c
                                    + "'");
    }
  }

  int add_atom(AtomToken atom, std::size_t offset) {
    int idx = g_.add_atom(std::move(atom));
    offsets_.push_back(offset);
    written_.emplace_back();
    bracket_h_.push_back(pending_bracket_h_);
    return idx;
  }

  BondOrder default_order(int a, int b) const {
    return g_.atoms[a].aromatic && g_.atoms[b].aromatic ? BondOrder::kAromatic
                                                        : BondOrder::kSingle;
  }

  void connect(int from, int to, const PendingBond &pb) {
    if (g_.find_bond(from, to) >= 0)
      throw SmilesParseError(pb.offset, "duplicate bond");
    g_.add_bond(from, to, pb.order.value_or(default_order(from, to)));
    written_[from].push_back(to);
    written_[to].push_back(from);
    if (pb.mark != 0)
      marks_.push_back({ from, to, pb.mark });
  }

  void ring_digit(int atom, int digit, const PendingBond &pb,
                  std::size_t offset) {
    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      written_[atom].push_back(-100);  // filled at closure
      rings_[digit] = { atom, pb, written_[atom].size() - 1, offset };
      return;
    }
    RingOpen open = it->second;
    rings_.erase(it);
    if (open.atom == atom)
      throw SmilesParseError(offset, "ring bond to the same atom");
    if (g_.find_bond(open.atom, atom) >= 0)
      throw SmilesParseError(offset, "ring closure duplicates a bond");
    if (open.bond.order && pb.order && *open.bond.order != *pb.order)
      throw SmilesParseError(offset, "conflicting ring bond orders");
    BondOrder order = open.bond.order ? *open.bond.order
                      : pb.order      ? *pb.order
                                      : default_order(open.atom, atom);
    g_.add_bond(open.atom, atom, order);
    written_[open.atom][open.slot] = atom;
    written_[atom].push_back(open.atom);
    if (open.bond.mark != 0)
      marks_.push_back({ open.atom, atom, open.bond.mark });
    else if (pb.mark != 0)
      marks_.push_back({ atom, open.atom, pb.mark });
  }

  // Side of neighbor n relative to double-bond atom d, or 0 if unmarked.
  int side(int n, int d) const {
    for (const Mark &m: marks_) {
      if (m.from == n && m.to == d)
        return -m.dir;
      if (m.from == d && m.to == n)
        return m.dir;
    }
    return 0;
  }

  void finish() {
    // Aromatic bonds must sit on rings; aromatic atoms must too.
    auto in_ring = ring_bonds(g_);
    for (int i = 0; i < g_.bond_count(); ++i)
      if (!in_ring[i] && g_.bonds[i].order == BondOrder::kAromatic)
        g_.bonds[i].order = BondOrder::kSingle;
    Adjacency adj(g_);
    for (int i = 0; i < g_.atom_count(); ++i) {
      if (!g_.atoms[i].aromatic)
        continue;
      bool ring_member = false;
      for (Neighbor nb: adj[i])
        ring_member |= static_cast<bool>(in_ring[nb.bond]);
      if (!ring_member)
        throw SmilesParseError(offsets_[i], "aromatic atom outside a ring");
    }

    for (int i = 0; i < g_.atom_count(); ++i) {
      AtomToken &a = g_.atoms[i];
      if (a.chirality == Chirality::kNone)
        continue;
      if (written_[i].size() == 3 || written_[i].size() == 4)
        a.stereo_refs = written_[i];
      else
        a.chirality = Chirality::kNone;
    }

    for (Bond &b: g_.bonds) {
      if (b.order != BondOrder::kDouble)
        continue;
      int ref_a = -1, side_a = 0, ref_b = -1, side_b = 0;
      for (int n: written_[b.a]) {
        if (n < 0 || n == b.b)
          continue;
        if (int s = side(n, b.a)) {
          ref_a = n;
          side_a = s;
          break;
        }
      }
      for (int n: written_[b.b]) {
        if (n < 0 || n == b.a)
          continue;
        if (int s = side(n, b.b)) {
          ref_b = n;
          side_b = s;
          break;
        }
      }
      if (ref_a >= 0 && ref_b >= 0) {
        b.stereo = side_a == side_b ? BondStereo::kCis : BondStereo::kTrans;
        b.stereo_refs = { ref_a, ref_b };
      }
    }

    perceive_aromaticity(g_);
  }

  std::string_view s_;
  MolecularGraph g_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<int>> written_;
  std::vector<bool> bracket_h_;
  bool pending_bracket_h_ = false;
  std::map<int, RingOpen> rings_;
  std::vector<Mark> marks_;
};

}  // namespace

MolecularGraph parse_smiles(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (static_cast<unsigned char>(s[i]) > 127)
      throw SmilesParseError(i, "non-ASCII character");
  return Parser(s).run();
}

}  // namespace rxnscope
