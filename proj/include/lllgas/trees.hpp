#pragma once
// Rooted-tree combinatorics: plane rooted trees (ordered children), labeled
// rooted trees on {0..n}, the child-order-forgetting map m, the natural
// labeling injection, and the plane-tree order.
//
// A plane tree is stored canonically under its natural labels: the root is 0,
// labels increase by depth and then by drawing position (top to bottom), so
// the plane-tree order is plain integer comparison.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lllgas {

inline constexpr int kPlaneTreeCap = 10;
inline constexpr int kLabeledTreeCap = 7;

struct PlaneRootedTree {
  // children[v] lists v's children top to bottom; canonical form keeps every
  // list strictly increasing and consecutive per the natural labeling.
  std::vector<std::vector<int>> children;
  std::vector<int> parent;  // parent[0] == -1
  std::vector<int> depth;

  int vertex_count() const { return static_cast<int>(parent.size()); }
  int order() const { return vertex_count() - 1; }  // the n in "n+1 vertices"

  bool operator==(const PlaneRootedTree&) const = default;
};

struct LabeledRootedTree {
  std::vector<int> parent;  // over vertex set {0..n}, parent[0] == -1

  int vertex_count() const { return static_cast<int>(parent.size()); }
  int order() const { return vertex_count() - 1; }
  std::vector<int> depths() const;
  std::vector<std::pair<int, int>> edges() const;  // {min,max} pairs, sorted

  static LabeledRootedTree from_edges(
      int n_vertices, const std::vector<std::pair<int, int>>& edges);

  bool operator==(const LabeledRootedTree&) const = default;
};

// Rebuilds a plane tree in canonical natural-label form from child lists
// given in drawing order (vertex ids arbitrary but root must be id 0).
PlaneRootedTree canonical_plane_tree(
    const std::vector<std::vector<int>>& children_in_drawing_order);

// All plane rooted trees with n+1 vertices; Catalan-number many.
std::vector<PlaneRootedTree> enumerate_plane_trees(int n);

// All labeled rooted trees on {0..n} rooted at 0; (n+1)^(n-1) many.
std::vector<LabeledRootedTree> enumerate_labeled_trees(int n);

// Orders every child list by increasing label and forgets the labels.
PlaneRootedTree map_m(const LabeledRootedTree& theta);

// Reads the natural labels of t off as a labeled tree; left inverse of map_m.
LabeledRootedTree map_theta(const PlaneRootedTree& t);

// For each vertex of theta, its natural label under map_m(theta). The
// plane-tree order on theta's vertices is the order of these values.
std::vector<int> natural_labels(const LabeledRootedTree& theta);

// Number of labeled trees mapping to t under m: n! / prod_v s_v!.
std::uint64_t preimage_size_of_m(const PlaneRootedTree& t);

// Plane-tree order on vertices of t (natural-label comparison).
std::strong_ordering plane_order_compare(const PlaneRootedTree& t,
                                         int u, int v);

// Number of equivalence classes of plane trees with n+1 vertices under
// forgetting child order (rooted unlabeled trees).
std::size_t count_unlabeled_rooted(int n);

// Nested parenthesized child lists, e.g. root with two leaves = "(()())".
std::string to_parenthesized(const PlaneRootedTree& t);

}  // namespace lllgas
