#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "lllgas/depgraph.hpp"
#include "lllgas/instances.hpp"
#include "lllgas/mt_engine.hpp"

using namespace lllgas;

TEST_CASE("dimacs parsing") {
  const auto parsed = parse_dimacs("c tiny\np cnf 2 1\n1 -2 0\n");
  CHECK(parsed.formula.n_vars == 2);
  REQUIRE(parsed.formula.clauses.size() == 1);
  CHECK(parsed.formula.clauses[0] == std::vector<int>{1, -2});
  CHECK(parsed.warnings.empty());

  // Clauses may span lines and share them.
  const auto multi = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 -2 -3 0\n");
  REQUIRE(multi.formula.clauses.size() == 2);
  CHECK(multi.formula.clauses[0] == std::vector<int>{1, 2, 3});
  CHECK(multi.formula.clauses[1] == std::vector<int>{-1, -2, -3});

  const auto taut = parse_dimacs("p cnf 2 2\n1 -1 0\n2 0\n");
  REQUIRE(taut.warnings.size() == 1);
  CHECK(taut.warnings[0] == "tautological clause kept: index 0");
  CHECK(taut.formula.clauses[0] == std::vector<int>{1, -1});
}

TEST_CASE("dimacs rejection") {
  CHECK_THROWS_WITH(parse_dimacs("c only comments\n"), "missing header");
  CHECK_THROWS_WITH(parse_dimacs(""), "missing header");
  CHECK_THROWS_WITH(parse_dimacs("p cnf two 1\n1 0\n"), "malformed header");
  CHECK_THROWS_WITH(parse_dimacs("p dnf 2 1\n1 0\n"), "malformed header");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 1\n1 3 0\n"),
                    "literal out of range");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 1\n0\n"), "empty clause");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 1\n1 x 0\n"),
                    "stray token in clause data");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 1\n1 -2\n"), "unterminated clause");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 2\n1 0\n"), "clause count mismatch");
  CHECK_THROWS_WITH(parse_dimacs("p cnf 2 1\n1 0\n2 0\n"),
                    "clause count mismatch");
}

TEST_CASE("clauses become events with dyadic probabilities") {
  CnfFormula f;
  f.n_vars = 3;
  f.clauses = {{1, -2, 3}};
  const auto inst = sat_to_lll(f);
  REQUIRE(inst.events.size() == 1);
  CHECK(inst.events[0].probability == doctest::Approx(0.125));
  CHECK(inst.events[0].vbl == std::vector<int>{0, 1, 2});
  CHECK(exact_event_probability(inst.events[0], inst.model) ==
        doctest::Approx(0.125));

  // Violated exactly at the falsifying assignment x1=0, x2=1, x3=0.
  CHECK(inst.events[0].occurs({0, 1, 0}));
  CHECK_FALSE(inst.events[0].occurs({1, 1, 0}));
  CHECK_FALSE(inst.events[0].occurs({0, 0, 0}));
  CHECK_FALSE(inst.events[0].occurs({0, 1, 1}));
}

TEST_CASE("repeated literals collapse, tautologies have zero probability") {
  CnfFormula f;
  f.n_vars = 2;
  f.clauses = {{1, 1, -2}, {1, -1}};
  const auto inst = sat_to_lll(f);
  CHECK(inst.events[0].probability == doctest::Approx(0.25));
  CHECK(inst.events[0].vbl == std::vector<int>{0, 1});
  CHECK(inst.events[1].probability == doctest::Approx(0.0));
  CHECK(exact_event_probability(inst.events[1], inst.model) ==
        doctest::Approx(0.0));

  CnfFormula bad;
  bad.n_vars = 1;
  bad.clauses = {{0}};
  CHECK_THROWS_WITH(sat_to_lll(bad), "zero literal in clause");

  CnfFormula outside;
  outside.n_vars = 1;
  outside.clauses = {{2}};
  CHECK_THROWS_WITH(sat_to_lll(outside), "literal out of range");
}

TEST_CASE("clause dependency graph is variable overlap") {
  CnfFormula f;
  f.n_vars = 6;
  f.clauses = {{1, 2}, {3, 4}, {-2, 5}, {6}};
  const auto inst = sat_to_lll(f);
  CHECK(inst.graph.size() == 4);
  CHECK(inst.graph.adjacent(0, 2));
  CHECK_FALSE(inst.graph.adjacent(0, 1));
  CHECK_FALSE(inst.graph.adjacent(0, 3));
  CHECK_FALSE(inst.graph.adjacent(1, 2));

  // Cross-check against the quadratic overlap scan.
  for (std::size_t a = 0; a < inst.events.size(); ++a)
    for (std::size_t b = a + 1; b < inst.events.size(); ++b) {
      bool overlap = false;
      for (int va : inst.events[a].vbl)
        for (int vb : inst.events[b].vbl)
          if (va == vb) overlap = true;
      CHECK(inst.graph.adjacent(static_cast<VertexId>(a),
                                static_cast<VertexId>(b)) == overlap);
    }

  const auto p = inst.probabilities();
  CHECK(p == std::vector<double>{0.25, 0.25, 0.25, 0.5});
}

TEST_CASE("random formulas are reproducible and well-formed") {
  const auto a = random_ksat(15, 30, 3, 7);
  const auto b = random_ksat(15, 30, 3, 7);
  CHECK(a == b);
  const auto c = random_ksat(15, 30, 3, 8);
  CHECK(a != c);

  CHECK(a.n_vars == 15);
  CHECK(a.clauses.size() == 30);
  for (const auto& clause : a.clauses) {
    REQUIRE(clause.size() == 3);
    std::set<int> vars;
    for (int l : clause) {
      CHECK(l != 0);
      CHECK(std::abs(l) <= 15);
      vars.insert(std::abs(l));
    }
    CHECK(vars.size() == 3);
  }

  // k equal to n forces every variable into each clause.
  const auto full = random_ksat(5, 1, 5, 3);
  std::set<int> seen;
  for (int l : full.clauses[0]) seen.insert(std::abs(l));
  CHECK(seen == std::set<int>{1, 2, 3, 4, 5});

  CHECK_THROWS_WITH(random_ksat(3, 1, 4, 0), "infeasible parameters");
  CHECK_THROWS_WITH(random_ksat(3, -1, 2, 0), "infeasible parameters");
  CHECK_THROWS_WITH(random_ksat(3, 1, 0, 0), "infeasible parameters");
}

TEST_CASE("hypergraph parsing") {
  const auto h = parse_hypergraph("h 5 2\n0 1 2\n2 3 4\n");
  CHECK(h.n_vertices == 5);
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0] == std::vector<int>{0, 1, 2});
  CHECK(h.edges[1] == std::vector<int>{2, 3, 4});

  CHECK_THROWS_WITH(parse_hypergraph(""), "missing header");
  CHECK_THROWS_WITH(parse_hypergraph("g 5 2\n"), "missing header");
  CHECK_THROWS_WITH(parse_hypergraph("h five 2\n"), "malformed header");
  CHECK_THROWS_WITH(parse_hypergraph("h 3 1\n0 9\n"), "vertex out of range");
  CHECK_THROWS_WITH(parse_hypergraph("h 3 1\n0 x\n"),
                    "stray token in edge data");
  CHECK_THROWS_WITH(parse_hypergraph("h 3 1\n1\n"), "edge too small");
  CHECK_THROWS_WITH(parse_hypergraph("h 3 1\n1 1\n"),
                    "duplicate vertex in edge");
  CHECK_THROWS_WITH(parse_hypergraph("h 3 2\n0 1\n"), "edge count mismatch");
}

TEST_CASE("two-coloring events fire on monochromatic edges") {
  Hypergraph h;
  h.n_vertices = 4;
  h.edges = {{0, 1, 2}, {2, 3}};
  const auto inst = hypergraph_coloring_to_lll(h);
  CHECK(inst.model.variable_count() == 4);
  REQUIRE(inst.events.size() == 2);
  CHECK(inst.events[0].probability == doctest::Approx(0.25));
  CHECK(inst.events[1].probability == doctest::Approx(0.5));
  CHECK(exact_event_probability(inst.events[0], inst.model) ==
        doctest::Approx(0.25));
  CHECK(exact_event_probability(inst.events[1], inst.model) ==
        doctest::Approx(0.5));

  CHECK(inst.events[0].occurs({0, 0, 0}));
  CHECK(inst.events[0].occurs({1, 1, 1}));
  CHECK_FALSE(inst.events[0].occurs({0, 1, 0}));
  CHECK(inst.graph.adjacent(0, 1));

  Hypergraph disjoint;
  disjoint.n_vertices = 4;
  disjoint.edges = {{0, 1}, {2, 3}};
  const auto apart = hypergraph_coloring_to_lll(disjoint);
  CHECK_FALSE(apart.graph.adjacent(0, 1));
  CHECK(apart.graph.edges().empty());
}

TEST_CASE("lowered instances run end to end") {
  const auto h = parse_hypergraph("h 6 3\n0 1 2\n2 3 4\n4 5 0\n");
  const auto inst = hypergraph_coloring_to_lll(h);
  const auto log = run_mt(inst.model, inst.events, inst.graph, 17);
  REQUIRE(log.terminated);
  for (const auto& e : inst.events) {
    std::vector<int> vals;
    for (int v : e.vbl) vals.push_back(log.final_assignment.at(v));
    CHECK_FALSE(e.occurs(vals));
  }
}
