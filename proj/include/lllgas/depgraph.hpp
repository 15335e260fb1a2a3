#pragma once
// Finite dependency graph with neighborhood and independent-set machinery.
// Vertices are dense integer ids; the id order doubles as the fixed total
// order on events that the witness-tree construction relies on.

#include <cstdint>
#include <vector>

namespace lllgas {

using VertexId = int;
using VertexSet = std::uint64_t;  // membership bitmask, vertex i <-> bit i

inline constexpr int kMaxMaskVertices = 64;

class DependencyGraph {
 public:
  explicit DependencyGraph(int n_vertices = 0);

  // One vertex per event; edge iff the variable sets intersect.
  static DependencyGraph from_variable_sets(
      const std::vector<std::vector<int>>& vbl_sets);

  static DependencyGraph from_edges(
      int n_vertices, const std::vector<std::pair<int, int>>& edges);

  int size() const { return static_cast<int>(adj_.size()); }
  void add_edge(VertexId x, VertexId y);
  bool adjacent(VertexId x, VertexId y) const;
  const std::vector<VertexId>& neighbors(VertexId x) const;
  int degree(VertexId x) const;
  std::vector<std::pair<int, int>> edges() const;

  // The relation ~: false iff {x,y} is an edge or x == y.
  bool compatible(VertexId x, VertexId y) const;

  // Mask-based queries; these require size() <= kMaxMaskVertices and throw
  // "graph too large for exact mode" otherwise.
  VertexSet full_set() const;
  VertexSet closed_neighborhood(VertexId x) const;  // x together with its neighbors
  bool is_independent(VertexSet s) const;

  // Every independent subset of `domain` (the empty set included), in
  // increasing bitmask order.
  std::vector<VertexSet> independent_subsets_of(VertexSet domain) const;

 private:
  void check_vertex(VertexId x) const;
  void require_mask_capacity() const;

  std::vector<std::vector<VertexId>> adj_;  // sorted neighbor lists
  std::vector<VertexSet> nbr_mask_;         // valid only when size() <= 64
};

}  // namespace lllgas
