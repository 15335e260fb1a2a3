#include "lllgas/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lllgas/rng.hpp"

namespace lllgas {
namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c' || line[first] == '%') continue;
    lines.push_back(line.substr(first));
  }
  return lines;
}

}  // namespace

ParsedCnf parse_dimacs(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t i = 0;
  if (i >= lines.size() || lines[i][0] != 'p')
    throw std::invalid_argument("missing header");
  std::istringstream header(lines[i++]);
  std::string p, fmt;
  int n_vars = -1, n_clauses = -1;
  header >> p >> fmt >> n_vars >> n_clauses;
  if (p != "p" || fmt != "cnf" || n_vars < 0 || n_clauses < 0 || !header)
    throw std::invalid_argument("malformed header");

  std::string body;
  for (; i < lines.size(); ++i) body += lines[i] + "\n";
  std::istringstream tokens(body);

  ParsedCnf out;
  out.formula.n_vars = n_vars;
  std::vector<int> clause;
  int lit = 0;
  while (tokens >> lit) {
    if (lit == 0) {
      if (clause.empty()) throw std::invalid_argument("empty clause");
      out.formula.clauses.push_back(clause);
      clause.clear();
      continue;
    }
    if (std::abs(lit) > n_vars)
      throw std::invalid_argument("literal out of range");
    clause.push_back(lit);
  }
  if (!tokens.eof()) throw std::invalid_argument("stray token in clause data");
  if (!clause.empty()) throw std::invalid_argument("unterminated clause");
  if (static_cast<int>(out.formula.clauses.size()) != n_clauses)
    throw std::invalid_argument("clause count mismatch");

  for (std::size_t c = 0; c < out.formula.clauses.size(); ++c) {
    std::set<int> seen(out.formula.clauses[c].begin(),
                       out.formula.clauses[c].end());
    for (int l : seen)
      if (seen.count(-l)) {
        out.warnings.push_back("tautological clause kept: index " +
                               std::to_string(c));
        break;
      }
  }
  return out;
}

std::vector<double> LllInstance::probabilities() const {
  std::vector<double> p;
  p.reserve(events.size());
  for (const auto& e : events) p.push_back(e.probability);
  return p;
}

LllInstance sat_to_lll(const CnfFormula& f) {
  LllInstance inst;
  inst.model = VariableModel::fair_bits(f.n_vars);

  std::vector<std::vector<int>> vbl_sets;
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    std::set<int> lits(f.clauses[c].begin(), f.clauses[c].end());
    if (lits.count(0)) throw std::invalid_argument("zero literal in clause");
    bool tautological = false;
    for (int l : lits)
      if (lits.count(-l)) tautological = true;

    std::vector<int> vbl;
    for (int l : lits) vbl.push_back(std::abs(l) - 1);
    std::sort(vbl.begin(), vbl.end());
    vbl.erase(std::unique(vbl.begin(), vbl.end()), vbl.end());
    for (int v : vbl)
      if (v < 0 || v >= f.n_vars)
        throw std::invalid_argument("literal out of range");

    // Per slot in vbl, the value making each of its literals false; a slot
    // carrying both polarities means the clause can never be falsified.
    std::vector<std::pair<std::size_t, int>> falsifying;
    for (int l : lits) {
      const std::size_t slot =
          std::lower_bound(vbl.begin(), vbl.end(), std::abs(l) - 1) - vbl.begin();
      falsifying.emplace_back(slot, l > 0 ? 0 : 1);
    }

    EventSpec e;
    e.id = static_cast<VertexId>(c);
    e.vbl = vbl;
    e.probability =
        tautological ? 0.0 : std::ldexp(1.0, -static_cast<int>(lits.size()));
    e.occurs = [falsifying](const std::vector<int>& values) {
      for (const auto& [slot, value] : falsifying)
        if (values[slot] != value) return false;
      return true;
    };
    inst.events.push_back(std::move(e));
    vbl_sets.push_back(vbl);
  }
  inst.graph = vbl_sets.empty() ? DependencyGraph(0)
                                : DependencyGraph::from_variable_sets(vbl_sets);
  return inst;
}

CnfFormula random_ksat(int n_vars, int n_clauses, int k, std::uint64_t seed) {
  if (k < 1 || k > n_vars || n_clauses < 0)
    throw std::invalid_argument("infeasible parameters");
  std::mt19937_64 rng(seed);
  CnfFormula f;
  f.n_vars = n_vars;
  std::vector<int> vars(n_vars);
  for (int c = 0; c < n_clauses; ++c) {
    std::iota(vars.begin(), vars.end(), 1);
    for (int i = 0; i < k; ++i) {
      const int j = i + sample_below(rng, n_vars - i);
      std::swap(vars[i], vars[j]);
    }
    std::vector<int> clause(vars.begin(), vars.begin() + k);
    std::sort(clause.begin(), clause.end());
    for (int& lit : clause)
      if (uniform01(rng) < 0.5) lit = -lit;
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

Hypergraph parse_hypergraph(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t i = 0;
  if (i >= lines.size() || lines[i][0] != 'h')
    throw std::invalid_argument("missing header");
  std::istringstream header(lines[i++]);
  std::string h;
  int n_vertices = -1, n_edges = -1;
  header >> h >> n_vertices >> n_edges;
  if (h != "h" || n_vertices < 0 || n_edges < 0 || !header)
    throw std::invalid_argument("malformed header");

  Hypergraph out;
  out.n_vertices = n_vertices;
  for (; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::vector<int> edge;
    int v = 0;
    while (row >> v) {
      if (v < 0 || v >= n_vertices)
        throw std::invalid_argument("vertex out of range");
      edge.push_back(v);
    }
    if (!row.eof()) throw std::invalid_argument("stray token in edge data");
    if (edge.size() < 2) throw std::invalid_argument("edge too small");
    std::vector<int> dedup(edge);
    std::sort(dedup.begin(), dedup.end());
    if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
      throw std::invalid_argument("duplicate vertex in edge");
    out.edges.push_back(std::move(edge));
  }
  if (static_cast<int>(out.edges.size()) != n_edges)
    throw std::invalid_argument("edge count mismatch");
  return out;
}

LllInstance hypergraph_coloring_to_lll(const Hypergraph& h) {
  LllInstance inst;
  inst.model = VariableModel::fair_bits(h.n_vertices);
  std::vector<std::vector<int>> vbl_sets;
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    std::vector<int> vbl(h.edges[i]);
    std::sort(vbl.begin(), vbl.end());
    EventSpec e;
    e.id = static_cast<VertexId>(i);
    e.vbl = vbl;
    e.probability = std::ldexp(1.0, 1 - static_cast<int>(vbl.size()));
    e.occurs = [](const std::vector<int>& values) {
      for (int v : values)
        if (v != values.front()) return false;
      return true;
    };
    inst.events.push_back(std::move(e));
    vbl_sets.push_back(std::move(vbl));
  }
  inst.graph = vbl_sets.empty() ? DependencyGraph(0)
                                : DependencyGraph::from_variable_sets(vbl_sets);
  return inst;
}

}  // namespace lllgas
