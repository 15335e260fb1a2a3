#pragma once
// Self-contained oracle suite: exhaustive small-case identities that pin the
// combinatorial core down, with counterexample payloads on failure. The same
// sweeps back the acceptance checks and the CLI verify subcommand.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lllgas/depgraph.hpp"

namespace lllgas {

struct FamilyResult {
  std::string family;
  bool pass = false;
  std::size_t cases = 0;
  std::string counterexample;  // empty when pass
};

struct VerifySuiteOptions {
  std::uint64_t seed = 1;
  int max_graph_vertices = 5;  // isomorphism classes up to this size
  int max_tuple_order = 4;     // tuples (x0..xn) with n up to this
  int random_graphs = 10;      // extra seeded labeled graphs, largest size
  bool mutate = false;         // drop the uncle rule; the sweep should catch it
};

std::vector<FamilyResult> run_verify_suite(const VerifySuiteOptions& options);

// One representative per isomorphism class of graphs on exactly n vertices.
std::vector<DependencyGraph> graph_isomorphism_classes(int n_vertices);

DependencyGraph random_graph(int n_vertices, double edge_prob,
                             std::mt19937_64& rng);

// Every tuple (x0..xn) over g's vertices for n = 0..max_order, notifying
// `fn(tuple)`; returns the number of tuples visited.
std::size_t for_each_tuple(const DependencyGraph& g, int max_order,
                           const std::function<void(const std::vector<VertexId>&)>& fn);

}  // namespace lllgas
