#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "lllgas/depgraph.hpp"
#include "lllgas/penrose.hpp"
#include "lllgas/trees.hpp"

using namespace lllgas;

namespace {

DependencyGraph triangle() {
  return DependencyGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
}

// Every graph on `n` labeled vertices, by edge subset.
std::vector<DependencyGraph> all_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<DependencyGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    DependencyGraph g(n);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1) g.add_edge(pairs[e].first, pairs[e].second);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<VertexTuple> all_tuples(const DependencyGraph& g, int max_order) {
  std::vector<VertexTuple> out;
  for (int n = 0; n <= max_order; ++n) {
    VertexTuple t(n + 1, 0);
    while (true) {
      out.push_back(t);
      int i = n;
      while (i >= 0 && t[i] == g.size() - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  return out;
}

// Hand-rolled restatement of the witness-tree Penrose conditions, kept
// independent of the library's label-tuple reduction.
bool penrose_by_hand(const WitnessTree& tau, const DependencyGraph& g) {
  const auto& t = tau.tree;
  const int n = t.vertex_count();
  for (int v = 0; v < n; ++v)
    for (int u = v + 1; u < n; ++u) {
      if (t.depth[u] == t.depth[v] &&
          !g.compatible(tau.labels[u], tau.labels[v]))
        return false;
      // v is an uncle of u drawn below u's father; ids grow with depth, so
      // the uncle is always the smaller id of the pair.
      if (t.depth[v] == t.depth[u] - 1 && v != t.parent[u] &&
          t.parent[u] < v && !g.compatible(tau.labels[u], tau.labels[v]))
        return false;
    }
  return true;
}

}  // namespace

TEST_CASE("tuple graph edges mark incompatible entries") {
  const auto g = DependencyGraph::from_edges(3, {{0, 1}});
  const auto tg = TupleGraph::build(g, {0, 1, 2});
  CHECK(tg.n_vertices == 3);
  CHECK(tg.edge_list == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK_FALSE(tg.connected());

  // Repeated vertices are incompatible with themselves.
  const auto tg2 = TupleGraph::build(g, {2, 2});
  CHECK(tg2.edge_list == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(tg2.connected());

  const auto tg3 = TupleGraph::build(triangle(), {0, 1, 2});
  CHECK(tg3.edge_list.size() == 3);
  CHECK(tg3.connected());
  CHECK(tg3.edge_index(1, 2) >= 0);
  CHECK(tg3.edge_index(0, 2) >= 0);

  CHECK_THROWS_AS(TupleGraph::build(g, {}), std::invalid_argument);
  CHECK_THROWS_AS(TupleGraph::build(g, {0, 5}), std::out_of_range);
}

TEST_CASE("penrose pairs on the triangle tuple") {
  const auto g = triangle();
  const VertexTuple tuple{0, 1, 2};
  const auto path = LabeledRootedTree::from_edges(3, {{0, 1}, {1, 2}});
  const auto other_path = LabeledRootedTree::from_edges(3, {{0, 2}, {1, 2}});
  const auto star = LabeledRootedTree::from_edges(3, {{0, 1}, {0, 2}});
  CHECK(is_penrose_pair(path, tuple, g));
  CHECK(is_penrose_pair(other_path, tuple, g));
  CHECK_FALSE(is_penrose_pair(star, tuple, g));  // same-depth incompatible pair
}

TEST_CASE("penrose pair on a single incompatible edge") {
  const auto g = DependencyGraph::from_edges(2, {{0, 1}});
  const auto edge = LabeledRootedTree::from_edges(2, {{0, 1}});
  CHECK(is_penrose_pair(edge, {0, 1}, g));
  CHECK(is_penrose_pair(edge, {1, 1}, g));
  CHECK_THROWS_AS(is_penrose_pair(edge, {0, 1, 1}, g), std::invalid_argument);
}

TEST_CASE("ursell base values") {
  const auto g = DependencyGraph::from_edges(2, {{0, 1}});
  CHECK(ursell_brute({0}, g) == 1);
  CHECK(ursell_penrose({0}, g) == 1);
  CHECK(ursell_brute({0, 1}, g) == -1);
  CHECK(ursell_penrose({0, 1}, g) == -1);

  const DependencyGraph empty2(2);
  CHECK(ursell_brute({0, 1}, empty2) == 0);  // disconnected tuple graph
  CHECK(ursell_penrose({0, 1}, empty2) == 0);

  CHECK(ursell_brute({0, 1, 2}, triangle()) == 2);
  CHECK(ursell_penrose({0, 1, 2}, triangle()) == 2);
}

TEST_CASE("long tuples hit the exact-mode cap") {
  const DependencyGraph g(1);
  const VertexTuple nine(kExactTupleVertices + 1, 0);
  CHECK_THROWS_AS(ursell_brute(nine, g), std::domain_error);
}

TEST_CASE("subgraph sum equals the signed tree count on small sweeps") {
  for (const auto& g : all_graphs(3))
    for (const auto& tuple : all_tuples(g, 3))
      CHECK(ursell_brute(tuple, g) == ursell_penrose(tuple, g));
}

TEST_CASE("connected tuples alternate in sign") {
  for (const auto& g : all_graphs(3))
    for (const auto& tuple : all_tuples(g, 3)) {
      if (!TupleGraph::build(g, tuple).connected()) continue;
      const long long value = ursell_brute(tuple, g);
      const int n = static_cast<int>(tuple.size()) - 1;
      CHECK(value != 0);
      CHECK((value > 0) == (n % 2 == 0));
    }
}

TEST_CASE("dropping the uncle condition breaks the identity somewhere") {
  const PenroseOptions mutated{true};
  bool mismatch = false;
  for (const auto& g : all_graphs(4)) {
    for (const auto& tuple : all_tuples(g, 3)) {
      const int n = static_cast<int>(tuple.size()) - 1;
      long long count = 0;
      for (const auto& theta : enumerate_labeled_trees(n))
        if (is_penrose_pair(theta, tuple, g, mutated)) ++count;
      if (n % 2 == 1) count = -count;
      if (count != ursell_brute(tuple, g)) mismatch = true;
    }
    if (mismatch) break;
  }
  CHECK(mismatch);
}

TEST_CASE("p map on the triangle tuple") {
  const auto g = triangle();
  const auto tg = TupleGraph::build(g, {0, 1, 2});
  const auto star = LabeledRootedTree::from_edges(3, {{0, 1}, {0, 2}});
  const auto path = LabeledRootedTree::from_edges(3, {{0, 1}, {1, 2}});

  // The star picks up the same-depth edge {1,2} and becomes the triangle.
  CHECK(partition_map_p(star, tg).edge_mask == 0b111);
  // Penrose trees are fixed points.
  CHECK(partition_map_p(path, tg) == tree_edge_mask(tg, path));

  const auto g2 = DependencyGraph::from_edges(2, {{0, 1}});
  const auto tg2 = TupleGraph::build(g2, {0, 1});
  const auto edge = LabeledRootedTree::from_edges(2, {{0, 1}});
  CHECK(partition_map_p(edge, tg2) == tree_edge_mask(tg2, edge));
}

TEST_CASE("p map fixed points are exactly the Penrose trees") {
  for (const auto& g : all_graphs(3))
    for (const auto& tuple : all_tuples(g, 3)) {
      const auto tg = TupleGraph::build(g, tuple);
      if (!tg.connected()) continue;
      const int n = static_cast<int>(tuple.size()) - 1;
      for (const auto& theta : enumerate_labeled_trees(n)) {
        bool spanning = true;
        for (const auto& [a, b] : theta.edges())
          if (tg.edge_index(a, b) < 0) spanning = false;
        if (!spanning) continue;
        const bool fixed =
            partition_map_p(theta, tg) == tree_edge_mask(tg, theta);
        CHECK(fixed == is_penrose_pair(theta, tuple, g));
      }
    }
}

TEST_CASE("q map deletes the same-depth triangle edge") {
  const auto tg = TupleGraph::build(triangle(), {0, 1, 2});
  const auto star = partition_map_q(tg, TupleSubgraph{0b111});
  CHECK(star.parent == std::vector<int>{-1, 0, 0});

  CHECK_THROWS_AS(partition_map_q(tg, TupleSubgraph{0}), std::invalid_argument);
}

TEST_CASE("q map keeps the four-cycle depths") {
  const auto g =
      DependencyGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto tg = TupleGraph::build(g, {0, 1, 2, 3});
  REQUIRE(tg.edge_list.size() == 4);
  const auto theta = partition_map_q(tg, TupleSubgraph{0b1111});
  CHECK(theta.edges() ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(theta.depths() == std::vector<int>{0, 1, 2, 1});
}

TEST_CASE("q map leaves plain trees alone") {
  const auto g = DependencyGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  const auto tg = TupleGraph::build(g, {0, 1, 2, 3});
  const auto theta = LabeledRootedTree::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  const auto mask = tree_edge_mask(tg, theta);
  const auto back = partition_map_q(tg, mask);
  CHECK(back == theta);
}

TEST_CASE("interval law and depth preservation on small sweeps") {
  for (const auto& g : all_graphs(3))
    for (const auto& tuple : all_tuples(g, 3)) {
      const auto tg = TupleGraph::build(g, tuple);
      if (!tg.connected()) continue;
      const std::uint64_t full = (std::uint64_t{1} << tg.edge_list.size()) - 1;
      for (std::uint64_t sub = 0; sub <= full; ++sub) {
        LabeledRootedTree theta;
        try {
          theta = partition_map_q(tg, TupleSubgraph{sub});
        } catch (const std::invalid_argument&) {
          continue;  // not a connected spanning subgraph
        }

        // theta sits inside [its own edges, p(theta)] around sub.
        const auto low = tree_edge_mask(tg, theta);
        const auto high = partition_map_p(theta, tg);
        CHECK((low.edge_mask & ~sub) == 0);
        CHECK((sub & ~high.edge_mask) == 0);

        // Distances from the root are untouched by the pruning.
        std::vector<int> dist(tg.n_vertices, -1);
        dist[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t head = 0; head < queue.size(); ++head) {
          const int v = queue[head];
          for (std::size_t e = 0; e < tg.edge_list.size(); ++e) {
            if (!(sub >> e & 1)) continue;
            const auto [a, b] = tg.edge_list[e];
            const int other = a == v ? b : (b == v ? a : -1);
            if (other >= 0 && dist[other] == -1) {
              dist[other] = dist[v] + 1;
              queue.push_back(other);
            }
          }
        }
        CHECK(theta.depths() == dist);
      }
    }
}

TEST_CASE("partition scheme verifies on seeded small cases") {
  CHECK(verify_partition_scheme({0, 1, 2}, triangle()));
  CHECK(verify_partition_scheme({0, 1}, DependencyGraph::from_edges(2, {{0, 1}})));
  for (const auto& g : all_graphs(3))
    for (const auto& tuple : all_tuples(g, 3)) {
      std::string why;
      const bool ok = verify_partition_scheme(tuple, g, &why);
      CHECK(ok);
      if (!ok) MESSAGE(why);
    }
}

TEST_CASE("witness tree validity") {
  DependencyGraph g(8);
  g.add_edge(3, 5);
  g.add_edge(5, 7);

  WitnessTree tau;
  tau.tree = canonical_plane_tree({{1, 2}, {}, {}});
  tau.labels = {5, 3, 7};
  CHECK(is_valid_witness_tree(tau, g));
  CHECK(serialize_witness(tau) == "5(3()7())");
  CHECK(is_penrose_witness(tau, g));  // 3 and 7 are compatible

  WitnessTree bad = tau;
  bad.labels = {5, 7, 3};  // siblings out of order
  CHECK_FALSE(is_valid_witness_tree(bad, g));
  CHECK_THROWS_AS(is_penrose_witness(bad, g), std::invalid_argument);

  WitnessTree loose = tau;
  loose.labels = {5, 3, 6};  // 6 is compatible with its parent 5
  CHECK_FALSE(is_valid_witness_tree(loose, g));
}

TEST_CASE("penrose witness examples") {
  DependencyGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);

  WitnessTree chain;
  chain.tree = canonical_plane_tree({{1}, {}});
  chain.labels = {0, 0};  // self-dependent event twice
  CHECK(is_valid_witness_tree(chain, g));
  CHECK(is_penrose_witness(chain, g));

  WitnessTree fork;
  fork.tree = canonical_plane_tree({{1, 2}, {}, {}});
  fork.labels = {0, 1, 2};
  CHECK(is_valid_witness_tree(fork, g));
  CHECK_FALSE(is_penrose_witness(fork, g));  // incompatible same-depth labels
}

TEST_CASE("witness Penrose verdicts match the hand-rolled conditions") {
  const auto g =
      DependencyGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  for (int n = 0; n <= 3; ++n)
    for (const auto& shape : enumerate_plane_trees(n)) {
      std::vector<VertexId> labels(n + 1, 0);
      while (true) {
        WitnessTree tau{shape, labels};
        if (is_valid_witness_tree(tau, g))
          CHECK(is_penrose_witness(tau, g) == penrose_by_hand(tau, g));
        int i = n;
        while (i >= 0 && labels[i] == g.size() - 1) labels[i--] = 0;
        if (i < 0) break;
        ++labels[i];
      }
    }
}
