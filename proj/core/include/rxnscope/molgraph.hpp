//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_MOLGRAPH_HPP_
#define RXNSCOPE_MOLGRAPH_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace rxnscope {

enum class AtomKind { kElement, kPlaceholder, kAbbreviation, kWildcard };

/// Tetrahedral tag with SMILES semantics: looking from the first reference
/// neighbor, the remaining ones run anticlockwise (kCcw, "@") or clockwise
/// (kCw, "@@").
enum class Chirality { kNone, kCcw, kCw };

enum class BondOrder { kSingle, kDouble, kTriple, kAromatic };

/// Wedge depiction; the narrow end sits on Bond::a.
enum class Wedge { kNone, kSolid, kDashed };

/// Double-bond geometry relative to Bond::stereo_refs.
enum class BondStereo { kNone, kCis, kTrans };

enum class MoleculeRole {
  kReactant,
  kProduct,
  kReactantTemplate,
  kProductTemplate,
  kCondition,
  kUnknown,
};

/// Pseudo-neighbor ids used in stereo reference lists.
inline constexpr int kImplicitHydrogen = -1;
inline constexpr int kAttachmentPoint = -2;

struct Point2 {
  double x = 0;
  double y = 0;

  bool operator==(const Point2 &) const = default;
};

struct AtomToken {
  AtomKind kind = AtomKind::kElement;
  // Element symbol in canonical case ("C", "Cl"), placeholder with brackets
  // ("[R1]"), abbreviation without brackets ("Ts"), or "*".
  std::string text = "C";
  bool aromatic = false;
  int charge = 0;
  std::optional<int> explicit_h;
  std::optional<int> isotope;
  std::optional<Point2> coords;
  Chirality chirality = Chirality::kNone;
  // Ordered neighbor atom indices (or kImplicitHydrogen / kAttachmentPoint)
  // that chirality refers to. Empty iff chirality is kNone.
  std::vector<int> stereo_refs;

  bool operator==(const AtomToken &) const = default;

  static AtomToken element(std::string symbol, bool aromatic = false);
  static AtomToken placeholder(std::string_view label);
  static AtomToken abbreviation(std::string token);
  static AtomToken wildcard(std::optional<int> isotope = std::nullopt);

  bool is_element() const { return kind == AtomKind::kElement; }
  bool is_placeholder() const { return kind == AtomKind::kPlaceholder; }
  bool is_hydrogen() const { return is_element() && text == "H"; }
  // Heavy atoms are non-hydrogen elements plus every non-element token.
  bool is_heavy() const { return !is_hydrogen(); }
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;
  Wedge wedge = Wedge::kNone;
  BondStereo stereo = BondStereo::kNone;
  // Neighbor of a and neighbor of b that stereo is expressed against.
  std::array<int, 2> stereo_refs { -1, -1 };

  bool operator==(const Bond &) const = default;

  int other(int atom) const { return atom == a ? b : a; }
  bool connects(int x, int y) const {
    return (a == x && b == y) || (a == y && b == x);
  }
};

struct MolecularGraph {
  std::vector<AtomToken> atoms;
  std::vector<Bond> bonds;
  std::optional<std::string> label;
  std::optional<MoleculeRole> role;

  bool operator==(const MolecularGraph &) const = default;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }
  bool empty() const { return atoms.empty(); }

  int add_atom(AtomToken atom);
  int add_bond(int a, int b, BondOrder order = BondOrder::kSingle);
  // Index of the bond joining x and y, or -1.
  int find_bond(int x, int y) const;
};

struct Neighbor {
  int atom;
  int bond;
};

/// Adjacency lists of a graph, in bond-list order. Built once per algorithm;
/// stays valid only as long as the graph is not modified.
class Adjacency {
public:
  explicit Adjacency(const MolecularGraph &g);

  std::span<const Neighbor> operator[](int atom) const {
    return { data_.data() + offsets_[atom],
             data_.data() + offsets_[atom + 1] };
  }
  int degree(int atom) const { return offsets_[atom + 1] - offsets_[atom]; }
  int size() const { return static_cast<int>(offsets_.size()) - 1; }

private:
  std::vector<int> offsets_;
  std::vector<Neighbor> data_;
};

// Validation -----------------------------------------------------------------

struct Violation {
  std::optional<int> atom;
  std::optional<int> bond;
  std::string rule;
  std::string message;

  bool operator==(const Violation &) const = default;
};

std::vector<Violation> validate_graph(const MolecularGraph &g);

// Subgraphs ------------------------------------------------------------------

/// A graph carved out of a larger one. index_map[i] is the original index of
/// atom i.
struct Subgraph {
  MolecularGraph graph;
  std::vector<int> index_map;
};

/// A substituent with one open valence on `attachment`. Stereo references to
/// the open valence use kAttachmentPoint.
struct Fragment {
  MolecularGraph graph;
  int attachment = 0;
  std::vector<int> index_map;
};

/// Connected components as sorted atom index lists, ordered by their lowest
/// atom index.
std::vector<std::vector<int>> connected_components(const MolecularGraph &g);

/// Induced subgraph on `atoms` (in the given order). Bonds leaving the set are
/// dropped, and so is stereo that refers to a dropped neighbor.
Subgraph induced_subgraph(const MolecularGraph &g, std::span<const int> atoms);

/// Component with the most heavy atoms; ties go to the component holding the
/// lowest original atom index. Throws GraphError on an empty graph.
Subgraph main_component(const MolecularGraph &g);

/// Induced fragment with a marked attachment atom. Throws GraphError if the
/// set is disconnected or does not contain the attachment.
Fragment induced_fragment(const MolecularGraph &g, std::span<const int> atom_set,
                          int attachment);

/// Fragment as a standalone graph with a "*" atom bonded to the attachment.
MolecularGraph fragment_with_dummy(const Fragment &f);

/// Inverse of fragment_with_dummy: removes the single unlabelled "*" atom and
/// marks its neighbor as the attachment. Throws GraphError unless exactly
/// one such atom with exactly one neighbor exists.
Fragment fragment_from_dummy(const MolecularGraph &g);

struct Replacement {
  int atom;
  Fragment fragment;
};

/// Replaces each listed atom with its fragment, re-pointing every bond of the
/// replaced atom to the fragment's attachment atom. Stereo references follow
/// the splice. Throws GraphError on a duplicate bond.
MolecularGraph replace_atoms(const MolecularGraph &g,
                             std::span<const Replacement> replacements);

/// Applies a permutation: atom i of g becomes atom perm[i] of the result.
MolecularGraph permute_atoms(const MolecularGraph &g, std::span<const int> perm);

/// Label of a placeholder atom without brackets ("[R1]" -> "R1").
std::string placeholder_label(const AtomToken &atom);

/// True if text is a bracket-free R-group style label (R, R1, Ar2, X ...).
bool is_placeholder_label(std::string_view text);

/// Implicit hydrogen count from the default valence model; zero for atoms
/// with explicit_h set and for non-element atoms.
int implicit_hydrogens(const MolecularGraph &g, const Adjacency &adj, int atom);

/// explicit_h if present, otherwise implicit_hydrogens. Does not count
/// explicit hydrogen atoms.
int hydrogen_count(const MolecularGraph &g, const Adjacency &adj, int atom);

/// Sum of bond orders, counting aromatic bonds as one plus one extra unit for
/// an aromatic atom. Bonds to explicit hydrogen atoms count; hydrogen counts
/// do not.
int bond_valence(const MolecularGraph &g, const Adjacency &adj, int atom);

// Enum spellings -------------------------------------------------------------

std::string_view to_string(BondOrder order);
std::string_view to_string(Wedge wedge);
std::string_view to_string(MoleculeRole role);
std::string_view to_string(AtomKind kind);
std::optional<BondOrder> bond_order_from_string(std::string_view s);
std::optional<Wedge> wedge_from_string(std::string_view s);
std::optional<MoleculeRole> molecule_role_from_string(std::string_view s);

// JSON form ------------------------------------------------------------------

/// {"atoms":[{"symbol","charge","h","isotope","x","y"}],"bonds":[{"a","b",
/// "order","wedge"}],"label","role"}. Aromatic atoms use lowercase symbols;
/// chirality rides on bracket symbols ("[C@H]") relative to ascending
/// neighbor order.
nlohmann::json graph_to_json(const MolecularGraph &g);
MolecularGraph graph_from_json(const nlohmann::json &j);

}  // namespace rxnscope

#endif  // RXNSCOPE_MOLGRAPH_HPP_
