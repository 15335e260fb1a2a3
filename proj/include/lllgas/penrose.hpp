#pragma once
// Penrose-tree predicates over (tree, vertex tuple) pairs, the signed
// connected-subgraph coefficient computed by two independent routes, and the
// interval partition maps q and p on connected spanning subgraphs.

#include <cstdint>
#include <string>
#include <vector>

#include "lllgas/depgraph.hpp"
#include "lllgas/trees.hpp"

namespace lllgas {

// Tuples are (x0, x1, ..., xn), repetitions allowed.
using VertexTuple = std::vector<VertexId>;

// Largest n+1 accepted by the exhaustive operations below.
inline constexpr int kExactTupleVertices = 8;

// Graph on index set {0..n} with an edge {i,j} wherever x_i and x_j are
// incompatible (adjacent in the dependency graph, or equal).
struct TupleGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edge_list;  // i < j, sorted
  std::vector<std::uint32_t> adj;              // index-set adjacency masks

  static TupleGraph build(const DependencyGraph& g, const VertexTuple& tuple);
  bool connected() const;
  int edge_index(int i, int j) const;  // -1 when absent
};

// Subgraph of a TupleGraph, as a mask over its edge_list.
struct TupleSubgraph {
  std::uint64_t edge_mask = 0;
  bool operator==(const TupleSubgraph&) const = default;
};

struct PenroseOptions {
  bool ignore_uncle_rule = false;  // drops the third condition; diagnostics only
};

// One labeled tree compiled to the index-pair checks the Penrose conditions
// need, so sweeps over many tuples pay the tree analysis once.
class PenroseChecker {
 public:
  explicit PenroseChecker(const LabeledRootedTree& theta);

  bool check(const VertexTuple& tuple, const DependencyGraph& g,
             const PenroseOptions& opt = {}) const;

  const LabeledRootedTree& tree() const { return theta_; }

 private:
  LabeledRootedTree theta_;
  std::vector<std::pair<int, int>> edge_pairs_;        // child, parent
  std::vector<std::pair<int, int>> same_depth_pairs_;  // must be compatible
  std::vector<std::pair<int, int>> uncle_pairs_;       // must be compatible
};

std::vector<PenroseChecker> make_penrose_checkers(int n);

bool is_penrose_pair(const LabeledRootedTree& theta, const VertexTuple& tuple,
                     const DependencyGraph& g, const PenroseOptions& opt = {});

// Signed sum over connected spanning subgraphs of the tuple graph,
// (-1)^(edge count); 0 when the tuple graph is disconnected; 1 for a
// single-point tuple.
long long ursell_brute(const VertexTuple& tuple, const DependencyGraph& g);

// Same value as (-1)^n times the number of Penrose trees for the tuple.
long long ursell_penrose(const VertexTuple& tuple, const DependencyGraph& g,
                         const PenroseOptions& opt = {});

// Top of the interval [theta, p(theta)]: theta plus every tuple-graph edge
// joining equal depths, or depths one apart with the parent of the deeper
// endpoint preceding the shallower endpoint in plane-tree order.
TupleSubgraph partition_map_p(const LabeledRootedTree& theta,
                              const TupleGraph& tg);

// Spanning tree of a connected spanning subgraph: same-depth edges removed,
// then a label-ordered sweep keeps one parent per vertex. Preserves every
// vertex's distance from the root.
LabeledRootedTree partition_map_q(const TupleGraph& tg,
                                  const TupleSubgraph& sub);

TupleSubgraph tree_edge_mask(const TupleGraph& tg,
                             const LabeledRootedTree& theta);

// Exhaustive check that the intervals [theta, p(theta)] are disjoint, cover
// all connected spanning subgraphs, and that q maps each interval member back
// to its tree. On failure, *why (when given) receives a description.
bool verify_partition_scheme(const VertexTuple& tuple,
                             const DependencyGraph& g,
                             std::string* why = nullptr);

// Plane rooted tree with an event label per vertex (indexed by natural
// label), as produced by the execution-log construction.
struct WitnessTree {
  PlaneRootedTree tree;
  std::vector<VertexId> labels;

  bool operator==(const WitnessTree&) const = default;
};

// Structural validity: labels in range, parent/child labels incompatible,
// sibling labels strictly increasing.
bool is_valid_witness_tree(const WitnessTree& tau, const DependencyGraph& g);

// Penrose conditions on a witness tree: same-depth labels pairwise
// compatible, and labels compatible with uncles drawn after the parent.
bool is_penrose_witness(const WitnessTree& tau, const DependencyGraph& g);

// "5(3()7())" = root labeled 5 with children labeled 3 and 7.
std::string serialize_witness(const WitnessTree& tau);

}  // namespace lllgas
