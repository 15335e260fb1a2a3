#pragma once
// Concrete problem encodings: CNF formulas (DIMACS input and seeded random
// generation) and hypergraph 2-coloring, each lowered to a variable model,
// event list, and dependency graph.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lllgas/depgraph.hpp"
#include "lllgas/mt_engine.hpp"

namespace lllgas {

struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based literals

  bool operator==(const CnfFormula&) const = default;
};

struct ParsedCnf {
  CnfFormula formula;
  std::vector<std::string> warnings;  // tautological clauses are kept
};

// DIMACS CNF: "c" comment lines, a "p cnf V C" header, then C clauses of
// nonzero literals terminated by 0 (line breaks are not significant).
ParsedCnf parse_dimacs(std::string_view text);

struct LllInstance {
  VariableModel model;
  std::vector<EventSpec> events;
  DependencyGraph graph;

  std::vector<double> probabilities() const;
};

// Fair random bit per variable; one event per clause, violated when every
// literal is false; probability 2^-(distinct literals), or 0 for a
// tautological clause.
LllInstance sat_to_lll(const CnfFormula& f);

// Each clause: a uniform k-subset of the variables with uniform signs.
// Duplicate clauses may occur. Identical seeds give identical formulas.
CnfFormula random_ksat(int n_vars, int n_clauses, int k, std::uint64_t seed);

struct Hypergraph {
  int n_vertices = 0;
  std::vector<std::vector<int>> edges;  // 0-based vertex ids, size >= 2

  bool operator==(const Hypergraph&) const = default;
};

// Text format: header "h V E", then one line of vertex ids per edge.
Hypergraph parse_hypergraph(std::string_view text);

// Fair random color per vertex; one event per edge, violated when the edge
// is monochromatic; probability 2^(1-|edge|).
LllInstance hypergraph_coloring_to_lll(const Hypergraph& h);

}  // namespace lllgas
