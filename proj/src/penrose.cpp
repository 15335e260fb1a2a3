#include "lllgas/penrose.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace lllgas {
namespace {

void check_tuple(const VertexTuple& tuple, const DependencyGraph& g) {
  if (tuple.empty()) throw std::invalid_argument("empty tuple");
  for (VertexId x : tuple)
    if (x < 0 || x >= g.size())
      throw std::out_of_range("tuple entry outside graph");
}

struct UnionFind {
  int parent[kExactTupleVertices + 1];
  void reset(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

TupleGraph TupleGraph::build(const DependencyGraph& g,
                             const VertexTuple& tuple) {
  check_tuple(tuple, g);
  TupleGraph tg;
  tg.n_vertices = static_cast<int>(tuple.size());
  tg.adj.assign(tg.n_vertices, 0);
  for (int i = 0; i < tg.n_vertices; ++i)
    for (int j = i + 1; j < tg.n_vertices; ++j)
      if (!g.compatible(tuple[i], tuple[j])) {
        tg.edge_list.emplace_back(i, j);
        tg.adj[i] |= 1u << j;
        tg.adj[j] |= 1u << i;
      }
  return tg;
}

bool TupleGraph::connected() const {
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= adj[v] & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  return seen == (n_vertices >= 32 ? ~0u : (1u << n_vertices) - 1);
}

int TupleGraph::edge_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto it = std::lower_bound(edge_list.begin(), edge_list.end(),
                                   std::make_pair(i, j));
  if (it == edge_list.end() || *it != std::make_pair(i, j)) return -1;
  return static_cast<int>(it - edge_list.begin());
}

PenroseChecker::PenroseChecker(const LabeledRootedTree& theta)
    : theta_(theta) {
  const int nv = theta.vertex_count();
  const auto depth = theta.depths();
  const auto pos = natural_labels(theta);
  for (int v = 1; v < nv; ++v) edge_pairs_.emplace_back(v, theta.parent[v]);
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (depth[i] == depth[j]) same_depth_pairs_.emplace_back(i, j);
  for (int i = 1; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      if (j != theta.parent[i] && depth[j] == depth[i] - 1 &&
          pos[theta.parent[i]] < pos[j])
        uncle_pairs_.emplace_back(i, j);
}

bool PenroseChecker::check(const VertexTuple& tuple, const DependencyGraph& g,
                           const PenroseOptions& opt) const {
  if (static_cast<int>(tuple.size()) != theta_.vertex_count())
    throw std::invalid_argument("tuple length does not match tree");
  for (const auto& [v, p] : edge_pairs_)
    if (g.compatible(tuple[v], tuple[p])) return false;
  for (const auto& [i, j] : same_depth_pairs_)
    if (!g.compatible(tuple[i], tuple[j])) return false;
  if (!opt.ignore_uncle_rule)
    for (const auto& [i, j] : uncle_pairs_)
      if (!g.compatible(tuple[i], tuple[j])) return false;
  return true;
}

std::vector<PenroseChecker> make_penrose_checkers(int n) {
  std::vector<PenroseChecker> out;
  for (const auto& theta : enumerate_labeled_trees(n)) out.emplace_back(theta);
  return out;
}

bool is_penrose_pair(const LabeledRootedTree& theta, const VertexTuple& tuple,
                     const DependencyGraph& g, const PenroseOptions& opt) {
  return PenroseChecker(theta).check(tuple, g, opt);
}

long long ursell_brute(const VertexTuple& tuple, const DependencyGraph& g) {
  check_tuple(tuple, g);
  const int nv = static_cast<int>(tuple.size());
  const int n = nv - 1;
  if (nv > kExactTupleVertices)
    throw std::domain_error("exact mode cap exceeded");
  if (n == 0) return 1;
  const TupleGraph tg = TupleGraph::build(g, tuple);
  if (!tg.connected()) return 0;
  const int ne = static_cast<int>(tg.edge_list.size());
  long long total = 0;
  UnionFind uf;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    if (std::popcount(mask) < n) continue;
    uf.reset(nv);
    int components = nv;
    std::uint64_t rest = mask;
    while (rest) {
      const int e = std::countr_zero(rest);
      rest &= rest - 1;
      if (uf.unite(tg.edge_list[e].first, tg.edge_list[e].second))
        --components;
    }
    if (components == 1) total += (std::popcount(mask) & 1) ? -1 : 1;
  }
  return total;
}

namespace {

// Checker sets are pure functions of the order; build each once.
const std::vector<PenroseChecker>& cached_checkers(int n) {
  static std::array<std::once_flag, kLabeledTreeCap + 1> flags;
  static std::array<std::vector<PenroseChecker>, kLabeledTreeCap + 1> cache;
  std::call_once(flags[n], [n] { cache[n] = make_penrose_checkers(n); });
  return cache[n];
}

}  // namespace

long long ursell_penrose(const VertexTuple& tuple, const DependencyGraph& g,
                         const PenroseOptions& opt) {
  check_tuple(tuple, g);
  const int n = static_cast<int>(tuple.size()) - 1;
  if (n + 1 > kExactTupleVertices || n > kLabeledTreeCap)
    throw std::domain_error("exact mode cap exceeded");
  long long count = 0;
  for (const auto& checker : cached_checkers(n))
    if (checker.check(tuple, g, opt)) ++count;
  return (n & 1) ? -count : count;
}

TupleSubgraph tree_edge_mask(const TupleGraph& tg,
                             const LabeledRootedTree& theta) {
  TupleSubgraph out;
  for (int v = 1; v < theta.vertex_count(); ++v) {
    const int e = tg.edge_index(v, theta.parent[v]);
    if (e < 0) throw std::invalid_argument("tree edge not in tuple graph");
    out.edge_mask |= std::uint64_t{1} << e;
  }
  return out;
}

TupleSubgraph partition_map_p(const LabeledRootedTree& theta,
                              const TupleGraph& tg) {
  if (theta.vertex_count() != tg.n_vertices)
    throw std::invalid_argument("tree size does not match tuple graph");
  TupleSubgraph result = tree_edge_mask(tg, theta);
  const auto depth = theta.depths();
  const auto pos = natural_labels(theta);
  for (std::size_t e = 0; e < tg.edge_list.size(); ++e) {
    if (result.edge_mask >> e & 1) continue;
    auto [i, j] = tg.edge_list[e];
    if (depth[i] == depth[j]) {
      result.edge_mask |= std::uint64_t{1} << e;
      continue;
    }
    if (depth[i] < depth[j]) std::swap(i, j);  // i deeper
    if (depth[i] == depth[j] + 1 && pos[theta.parent[i]] < pos[j])
      result.edge_mask |= std::uint64_t{1} << e;
  }
  return result;
}

LabeledRootedTree partition_map_q(const TupleGraph& tg,
                                  const TupleSubgraph& sub) {
  const int nv = tg.n_vertices;
  std::vector<std::uint32_t> adj(nv, 0);
  for (std::size_t e = 0; e < tg.edge_list.size(); ++e)
    if (sub.edge_mask >> e & 1) {
      const auto& [i, j] = tg.edge_list[e];
      adj[i] |= 1u << j;
      adj[j] |= 1u << i;
    }

  std::vector<int> depth(nv, -1);
  depth[0] = 0;
  std::uint32_t seen = 1, frontier = 1;
  int level = 0;
  while (frontier) {
    ++level;
    std::uint32_t next = 0;
    std::uint32_t rest = frontier;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      next |= adj[v] & ~seen;
    }
    rest = next;
    while (rest) {
      depth[std::countr_zero(rest)] = level;
      rest &= rest - 1;
    }
    seen |= next;
    frontier = next;
  }
  if (seen != (nv >= 32 ? ~0u : (1u << nv) - 1))
    throw std::invalid_argument("disconnected subgraph");

  std::vector<std::uint32_t> depth_mask(nv + 1, 0);
  for (int v = 0; v < nv; ++v) depth_mask[depth[v]] |= 1u << v;

  // Step 1: drop every edge joining equal depths.
  for (int v = 0; v < nv; ++v) adj[v] &= ~depth_mask[depth[v]];

  // Step 2: sweep in the natural order of the growing tree; each processed
  // vertex claims its remaining next-depth neighbors in label order, and a
  // claimed child keeps no other edge into its parent's depth.
  std::vector<int> parent(nv, -2);
  parent[0] = -1;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    std::uint32_t kids = adj[v] & depth_mask[depth[v] + 1];
    while (kids) {
      const int u = std::countr_zero(kids);
      kids &= kids - 1;
      parent[u] = v;
      const std::uint32_t cut = adj[u] & depth_mask[depth[v]] & ~(1u << v);
      adj[u] &= ~cut;
      std::uint32_t rest = cut;
      while (rest) {
        const int w = std::countr_zero(rest);
        rest &= rest - 1;
        adj[w] &= ~(1u << u);
      }
      queue.push_back(u);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (parent[v] == -2) throw std::logic_error("sweep left a vertex unclaimed");
  return LabeledRootedTree{std::move(parent)};
}

bool verify_partition_scheme(const VertexTuple& tuple,
                             const DependencyGraph& g, std::string* why) {
  check_tuple(tuple, g);
  const int nv = static_cast<int>(tuple.size());
  const int n = nv - 1;
  if (nv > kExactTupleVertices)
    throw std::domain_error("exact mode cap exceeded");
  const TupleGraph tg = TupleGraph::build(g, tuple);
  if (n == 0) return true;
  if (!tg.connected()) return true;  // no connected spanning subgraphs

  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  const int ne = static_cast<int>(tg.edge_list.size());
  UnionFind uf;
  const auto is_csg = [&](std::uint64_t mask) {
    uf.reset(nv);
    int components = nv;
    std::uint64_t rest = mask;
    while (rest) {
      const int e = std::countr_zero(rest);
      rest &= rest - 1;
      if (uf.unite(tg.edge_list[e].first, tg.edge_list[e].second))
        --components;
    }
    return components == 1;
  };

  std::size_t csg_count = 0;
  std::vector<std::uint64_t> tree_masks;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    if (std::popcount(mask) < n || !is_csg(mask)) continue;
    ++csg_count;
    if (std::popcount(mask) == n) tree_masks.push_back(mask);
  }

  std::size_t covered = 0;
  for (const std::uint64_t tmask : tree_masks) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < ne; ++e)
      if (tmask >> e & 1) edges.push_back(tg.edge_list[e]);
    const auto theta = LabeledRootedTree::from_edges(nv, edges);
    const std::uint64_t pmask = partition_map_p(theta, tg).edge_mask;
    const std::uint64_t diff = pmask ^ tmask;
    std::uint64_t sub = 0;
    while (true) {
      const std::uint64_t gmask = tmask | sub;
      ++covered;
      const auto back = partition_map_q(tg, TupleSubgraph{gmask});
      if (tree_edge_mask(tg, back).edge_mask != tmask)
        return fail("q does not return the interval's tree");
      if (sub == diff) break;
      sub = (sub - diff) & diff;
    }
  }
  if (covered != csg_count)
    return fail("interval sizes do not add up to the subgraph count");

  // Interval law from the other side: q lands on a tree whose interval
  // contains the input.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
    if (std::popcount(mask) < n || !is_csg(mask)) continue;
    const auto theta = partition_map_q(tg, TupleSubgraph{mask});
    const std::uint64_t tmask = tree_edge_mask(tg, theta).edge_mask;
    const std::uint64_t pmask = partition_map_p(theta, tg).edge_mask;
    if ((tmask & ~mask) || (mask & ~pmask))
      return fail("subgraph escapes the interval of its tree");
    const auto depth_in = theta.depths();
    // Depth preservation: distances in the tree match distances in the input.
    std::vector<int> dist(nv, -1);
    dist[0] = 0;
    std::vector<std::uint32_t> adj(nv, 0);
    for (int e = 0; e < ne; ++e)
      if (mask >> e & 1) {
        adj[tg.edge_list[e].first] |= 1u << tg.edge_list[e].second;
        adj[tg.edge_list[e].second] |= 1u << tg.edge_list[e].first;
      }
    std::uint32_t seen = 1, frontier = 1;
    int level = 0;
    while (frontier) {
      ++level;
      std::uint32_t next = 0, rest = frontier;
      while (rest) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        next |= adj[v] & ~seen;
      }
      rest = next;
      while (rest) {
        dist[std::countr_zero(rest)] = level;
        rest &= rest - 1;
      }
      seen |= next;
      frontier = next;
    }
    for (int v = 0; v < nv; ++v)
      if (dist[v] != depth_in[v]) return fail("q changed a root distance");
  }
  return true;
}

bool is_valid_witness_tree(const WitnessTree& tau, const DependencyGraph& g) {
  const int nv = tau.tree.vertex_count();
  if (static_cast<int>(tau.labels.size()) != nv) return false;
  for (VertexId x : tau.labels)
    if (x < 0 || x >= g.size()) return false;
  for (int v = 1; v < nv; ++v)
    if (g.compatible(tau.labels[v], tau.labels[tau.tree.parent[v]]))
      return false;
  for (int v = 0; v < nv; ++v) {
    const auto& ch = tau.tree.children[v];
    for (std::size_t i = 1; i < ch.size(); ++i)
      if (tau.labels[ch[i - 1]] >= tau.labels[ch[i]]) return false;
  }
  return true;
}

bool is_penrose_witness(const WitnessTree& tau, const DependencyGraph& g) {
  if (!is_valid_witness_tree(tau, g))
    throw std::invalid_argument("invalid witness tree");
  return is_penrose_pair(map_theta(tau.tree), tau.labels, g);
}

std::string serialize_witness(const WitnessTree& tau) {
  std::string out;
  auto rec = [&](auto&& self, int v) -> void {
    out += std::to_string(tau.labels[v]);
    out += "(";
    for (int c : tau.tree.children[v]) self(self, c);
    out += ")";
  };
  rec(rec, 0);
  return out;
}

}  // namespace lllgas
