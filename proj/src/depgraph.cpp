#include "lllgas/depgraph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lllgas {

DependencyGraph::DependencyGraph(int n_vertices) {
  if (n_vertices < 0) throw std::invalid_argument("negative vertex count");
  adj_.resize(n_vertices);
  if (n_vertices <= kMaxMaskVertices) nbr_mask_.assign(n_vertices, 0);
}

DependencyGraph DependencyGraph::from_variable_sets(
    const std::vector<std::vector<int>>& vbl_sets) {
  if (vbl_sets.empty()) throw std::invalid_argument("no events");
  const int n = static_cast<int>(vbl_sets.size());
  std::vector<std::vector<int>> sorted(vbl_sets);
  for (auto& s : sorted) {
    if (s.empty()) throw std::invalid_argument("unconstrained event");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  DependencyGraph g(n);
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const auto& a = sorted[x];
      const auto& b = sorted[y];
      std::size_t i = 0, j = 0;
      bool overlap = false;
      while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { overlap = true; break; }
        if (a[i] < b[j]) ++i; else ++j;
      }
      if (overlap) g.add_edge(x, y);
    }
  }
  return g;
}

DependencyGraph DependencyGraph::from_edges(
    int n_vertices, const std::vector<std::pair<int, int>>& edges) {
  DependencyGraph g(n_vertices);
  for (const auto& [x, y] : edges) g.add_edge(x, y);
  return g;
}

void DependencyGraph::check_vertex(VertexId x) const {
  if (x < 0 || x >= size()) throw std::out_of_range("vertex id out of range");
}

void DependencyGraph::require_mask_capacity() const {
  if (size() > kMaxMaskVertices)
    throw std::domain_error("graph too large for exact mode");
}

void DependencyGraph::add_edge(VertexId x, VertexId y) {
  check_vertex(x);
  check_vertex(y);
  if (x == y) throw std::invalid_argument("self-loop not allowed");
  if (adjacent(x, y)) return;
  adj_[x].insert(std::lower_bound(adj_[x].begin(), adj_[x].end(), y), y);
  adj_[y].insert(std::lower_bound(adj_[y].begin(), adj_[y].end(), x), x);
  if (!nbr_mask_.empty()) {
    nbr_mask_[x] |= VertexSet{1} << y;
    nbr_mask_[y] |= VertexSet{1} << x;
  }
}

bool DependencyGraph::adjacent(VertexId x, VertexId y) const {
  check_vertex(x);
  check_vertex(y);
  return std::binary_search(adj_[x].begin(), adj_[x].end(), y);
}

const std::vector<VertexId>& DependencyGraph::neighbors(VertexId x) const {
  check_vertex(x);
  return adj_[x];
}

int DependencyGraph::degree(VertexId x) const {
  check_vertex(x);
  return static_cast<int>(adj_[x].size());
}

std::vector<std::pair<int, int>> DependencyGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < size(); ++x)
    for (int y : adj_[x])
      if (x < y) out.emplace_back(x, y);
  return out;
}

bool DependencyGraph::compatible(VertexId x, VertexId y) const {
  if (x == y) {
    check_vertex(x);
    return false;
  }
  return !adjacent(x, y);
}

VertexSet DependencyGraph::full_set() const {
  require_mask_capacity();
  if (size() == kMaxMaskVertices) return ~VertexSet{0};
  return (VertexSet{1} << size()) - 1;
}

VertexSet DependencyGraph::closed_neighborhood(VertexId x) const {
  require_mask_capacity();
  check_vertex(x);
  return nbr_mask_[x] | (VertexSet{1} << x);
}

bool DependencyGraph::is_independent(VertexSet s) const {
  require_mask_capacity();
  if (s & ~full_set()) throw std::out_of_range("subset outside vertex range");
  VertexSet rest = s;
  while (rest) {
    const int x = std::countr_zero(rest);
    rest &= rest - 1;
    if (nbr_mask_[x] & s) return false;
  }
  return true;
}

std::vector<VertexSet> DependencyGraph::independent_subsets_of(
    VertexSet domain) const {
  require_mask_capacity();
  if (domain & ~full_set())
    throw std::out_of_range("subset outside vertex range");
  std::vector<VertexSet> out;
  VertexSet s = 0;
  while (true) {
    if (is_independent(s)) out.push_back(s);
    if (s == domain) break;
    s = (s - domain) & domain;  // next submask in increasing order
  }
  return out;
}

}  // namespace lllgas
