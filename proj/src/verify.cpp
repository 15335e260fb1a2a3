#include "lllgas/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "lllgas/instances.hpp"
#include "lllgas/mt_engine.hpp"
#include "lllgas/penrose.hpp"
#include "lllgas/rng.hpp"
#include "lllgas/trees.hpp"

namespace lllgas {
namespace {

std::string describe(const DependencyGraph& g, const VertexTuple& tuple) {
  std::ostringstream out;
  out << "graph n=" << g.size() << " edges{";
  bool first = true;
  for (const auto& [a, b] : g.edges()) {
    if (!first) out << ",";
    first = false;
    out << a << "-" << b;
  }
  out << "} tuple(";
  for (std::size_t i = 0; i < tuple.size(); ++i)
    out << (i ? "," : "") << tuple[i];
  out << ")";
  return out.str();
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

FamilyResult tree_count_family() {
  FamilyResult result{"tree_counts", true, 0, ""};
  const auto fail = [&](const std::string& msg) {
    result.pass = false;
    if (result.counterexample.empty()) result.counterexample = msg;
  };

  const std::size_t plane3 = enumerate_plane_trees(3).size();
  const std::size_t labeled3 = enumerate_labeled_trees(3).size();
  const std::size_t unlabeled3 = count_unlabeled_rooted(3);
  ++result.cases;
  if (plane3 != 5 || labeled3 != 16 || unlabeled3 != 4)
    fail("four-vertex counts: plane=" + std::to_string(plane3) +
         " labeled=" + std::to_string(labeled3) +
         " unlabeled=" + std::to_string(unlabeled3));

  for (int n = 0; n <= 6; ++n) {
    const auto plane = enumerate_plane_trees(n);
    std::uint64_t labelings = 0;
    for (const auto& t : plane) {
      labelings += preimage_size_of_m(t);
      if (!(map_m(map_theta(t)) == t))
        fail("natural labeling round trip broke at n=" + std::to_string(n));
      ++result.cases;
    }
    const std::uint64_t expected =
        n == 0 ? 1 : pow_u64(static_cast<std::uint64_t>(n) + 1, n - 1);
    ++result.cases;
    if (labelings != expected)
      fail("labeling sum at n=" + std::to_string(n) + ": " +
           std::to_string(labelings) + " != " + std::to_string(expected));
  }
  return result;
}

FamilyResult m_preimage_family() {
  FamilyResult result{"m_preimage", true, 0, ""};
  for (int n = 0; n <= 5; ++n) {
    std::map<std::string, std::size_t> brute;
    for (const auto& theta : enumerate_labeled_trees(n))
      ++brute[to_parenthesized(map_m(theta))];
    for (const auto& t : enumerate_plane_trees(n)) {
      ++result.cases;
      const auto expected = preimage_size_of_m(t);
      const auto counted = brute[to_parenthesized(t)];
      if (counted != expected) {
        result.pass = false;
        result.counterexample = "tree " + to_parenthesized(t) + ": counted " +
                                std::to_string(counted) + ", formula " +
                                std::to_string(expected);
        return result;
      }
    }
  }
  return result;
}

std::vector<DependencyGraph> sweep_graphs(const VerifySuiteOptions& options) {
  std::vector<DependencyGraph> graphs;
  for (int n = 1; n <= options.max_graph_vertices; ++n)
    for (auto& g : graph_isomorphism_classes(n)) graphs.push_back(std::move(g));
  std::mt19937_64 rng(options.seed);
  for (int i = 0; i < options.random_graphs; ++i)
    graphs.push_back(random_graph(options.max_graph_vertices, 0.5, rng));
  return graphs;
}

FamilyResult ursell_family(const std::vector<DependencyGraph>& graphs,
                           const VerifySuiteOptions& options) {
  FamilyResult result{"ursell_identity", true, 0, ""};
  const PenroseOptions popt{options.mutate};
  std::vector<std::vector<PenroseChecker>> checkers;
  for (int n = 0; n <= options.max_tuple_order; ++n)
    checkers.push_back(make_penrose_checkers(n));

  for (const auto& g : graphs) {
    if (!result.pass) break;
    result.cases += for_each_tuple(g, options.max_tuple_order,
                                   [&](const VertexTuple& tuple) {
      if (!result.pass) return;
      const int n = static_cast<int>(tuple.size()) - 1;
      long long penrose = 0;
      for (const auto& checker : checkers[n])
        if (checker.check(tuple, g, popt)) ++penrose;
      if (n & 1) penrose = -penrose;
      const long long brute = ursell_brute(tuple, g);
      if (brute != penrose) {
        result.pass = false;
        result.counterexample = describe(g, tuple) + ": subgraph sum " +
                                std::to_string(brute) + ", tree count gives " +
                                std::to_string(penrose);
      }
    });
  }
  return result;
}

FamilyResult partition_scheme_family(const std::vector<DependencyGraph>& graphs,
                                     const VerifySuiteOptions& options) {
  FamilyResult result{"partition_scheme", true, 0, ""};
  for (const auto& g : graphs) {
    if (!result.pass) break;
    result.cases += for_each_tuple(g, options.max_tuple_order,
                                   [&](const VertexTuple& tuple) {
      if (!result.pass) return;
      std::string why;
      if (!verify_partition_scheme(tuple, g, &why)) {
        result.pass = false;
        result.counterexample = describe(g, tuple) + ": " + why;
      }
    });
  }
  return result;
}

FamilyResult witness_family(const VerifySuiteOptions& options) {
  FamilyResult result{"witness_penrose", true, 0, ""};
  for (std::uint64_t instance_seed = 1; instance_seed <= 3; ++instance_seed) {
    const auto formula = random_ksat(10, 8, 3, options.seed + instance_seed);
    const auto inst = sat_to_lll(formula);
    for (const auto rule :
         {SelectionRule::lowest_index, SelectionRule::uniform_random}) {
      for (std::uint64_t run_seed = 1; run_seed <= 10; ++run_seed) {
        const auto log = run_mt(inst.model, inst.events, inst.graph,
                                options.seed * 1000 + run_seed, 100000, rule);
        for (std::size_t s = 1; s <= log.steps.size(); ++s) {
          ++result.cases;
          const auto tau = witness_tree(log, s, inst.graph);
          if (!is_valid_witness_tree(tau, inst.graph) ||
              !is_penrose_witness(tau, inst.graph)) {
            result.pass = false;
            result.counterexample =
                "instance seed " + std::to_string(options.seed + instance_seed) +
                " run seed " + std::to_string(options.seed * 1000 + run_seed) +
                " step " + std::to_string(s) + ": " + serialize_witness(tau);
            return result;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace

std::vector<DependencyGraph> graph_isomorphism_classes(int n_vertices) {
  if (n_vertices < 1 || n_vertices > 6)
    throw std::invalid_argument("isomorphism sweep supports 1..6 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n_vertices; ++i)
    for (int j = i + 1; j < n_vertices; ++j) pairs.emplace_back(i, j);

  std::vector<int> perm(n_vertices);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  const auto pair_bit = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (pairs[e] == std::make_pair(a, b)) return e;
    throw std::logic_error("pair not found");
  };

  std::vector<DependencyGraph> classes;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::uint32_t canonical = mask;
    for (const auto& pm : perms) {
      std::uint32_t mapped = 0;
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask >> e & 1)
          mapped |= 1u << pair_bit(pm[pairs[e].first], pm[pairs[e].second]);
      canonical = std::min(canonical, mapped);
    }
    if (canonical != mask) continue;
    DependencyGraph g(n_vertices);
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1) g.add_edge(pairs[e].first, pairs[e].second);
    classes.push_back(std::move(g));
  }
  return classes;
}

DependencyGraph random_graph(int n_vertices, double edge_prob,
                             std::mt19937_64& rng) {
  DependencyGraph g(n_vertices);
  for (int i = 0; i < n_vertices; ++i)
    for (int j = i + 1; j < n_vertices; ++j)
      if (uniform01(rng) < edge_prob) g.add_edge(i, j);
  return g;
}

std::size_t for_each_tuple(
    const DependencyGraph& g, int max_order,
    const std::function<void(const std::vector<VertexId>&)>& fn) {
  std::size_t visited = 0;
  for (int n = 0; n <= max_order; ++n) {
    std::vector<VertexId> tuple(n + 1, 0);
    while (true) {
      fn(tuple);
      ++visited;
      int i = n;
      while (i >= 0 && tuple[i] == g.size() - 1) tuple[i--] = 0;
      if (i < 0) break;
      ++tuple[i];
    }
  }
  return visited;
}

std::vector<FamilyResult> run_verify_suite(const VerifySuiteOptions& options) {
  const auto graphs = sweep_graphs(options);
  std::vector<FamilyResult> results;
  results.push_back(tree_count_family());
  results.push_back(m_preimage_family());
  results.push_back(ursell_family(graphs, options));
  results.push_back(partition_scheme_family(graphs, options));
  results.push_back(witness_family(options));
  return results;
}

}  // namespace lllgas
