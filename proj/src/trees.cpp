#include "lllgas/trees.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace lllgas {
namespace {

struct Shape {
  std::vector<Shape> kids;
};

// All forests (ordered lists of shapes) with exactly m vertices total.
std::vector<std::vector<Shape>> forests_of_size(int m) {
  std::vector<std::vector<Shape>> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  for (int head = 1; head <= m; ++head) {
    std::vector<Shape> heads;
    for (auto& f : forests_of_size(head - 1)) heads.push_back(Shape{f});
    for (const auto& h : heads)
      for (const auto& rest : forests_of_size(m - head)) {
        std::vector<Shape> f;
        f.push_back(h);
        f.insert(f.end(), rest.begin(), rest.end());
        out.push_back(std::move(f));
      }
  }
  return out;
}

PlaneRootedTree tree_from_shape(const Shape& root) {
  PlaneRootedTree t;
  t.parent.push_back(-1);
  t.depth.push_back(0);
  t.children.emplace_back();
  std::queue<std::pair<const Shape*, int>> q;
  q.push({&root, 0});
  while (!q.empty()) {
    auto [sh, v] = q.front();
    q.pop();
    for (const auto& k : sh->kids) {
      const int c = t.vertex_count();
      t.parent.push_back(v);
      t.depth.push_back(t.depth[v] + 1);
      t.children.emplace_back();
      t.children[v].push_back(c);
      q.push({&k, c});
    }
  }
  return t;
}

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Serialization invariant under child reordering: children sorted recursively.
std::string sorted_serial(const PlaneRootedTree& t, int v) {
  std::vector<std::string> parts;
  for (int c : t.children[v]) parts.push_back(sorted_serial(t, c));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  s += ")";
  return s;
}

}  // namespace

std::vector<int> LabeledRootedTree::depths() const {
  const int nv = vertex_count();
  std::vector<std::vector<int>> ch(nv);
  for (int v = 1; v < nv; ++v) ch[parent[v]].push_back(v);
  std::vector<int> d(nv, -1);
  d[0] = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int c : ch[v]) {
      d[c] = d[v] + 1;
      q.push(c);
    }
  }
  return d;
}

std::vector<std::pair<int, int>> LabeledRootedTree::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 1; v < vertex_count(); ++v)
    out.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
  std::sort(out.begin(), out.end());
  return out;
}

LabeledRootedTree LabeledRootedTree::from_edges(
    int n_vertices, const std::vector<std::pair<int, int>>& edges) {
  if (n_vertices < 1) throw std::invalid_argument("empty vertex set");
  if (static_cast<int>(edges.size()) != n_vertices - 1)
    throw std::invalid_argument("edge count does not match a tree");
  std::vector<std::vector<int>> adj(n_vertices);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n_vertices || b < 0 || b >= n_vertices || a == b)
      throw std::invalid_argument("bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  LabeledRootedTree t;
  t.parent.assign(n_vertices, -2);
  t.parent[0] = -1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (t.parent[w] == -2) {
        t.parent[w] = v;
        q.push(w);
      }
  }
  for (int v = 0; v < n_vertices; ++v)
    if (t.parent[v] == -2) throw std::invalid_argument("edges not connected");
  return t;
}

PlaneRootedTree canonical_plane_tree(
    const std::vector<std::vector<int>>& children_in_drawing_order) {
  const int nv = static_cast<int>(children_in_drawing_order.size());
  if (nv < 1) throw std::invalid_argument("empty tree");
  PlaneRootedTree t;
  t.parent.assign(nv, -2);
  t.depth.assign(nv, 0);
  t.children.assign(nv, {});
  std::vector<int> natural(nv, -1);
  natural[0] = 0;
  t.parent[0] = -1;
  int next = 1;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int c : children_in_drawing_order[v]) {
      if (c < 0 || c >= nv || natural[c] != -1)
        throw std::invalid_argument("child lists do not form a tree");
      natural[c] = next++;
      t.parent[natural[c]] = natural[v];
      t.depth[natural[c]] = t.depth[natural[v]] + 1;
      t.children[natural[v]].push_back(natural[c]);
      q.push(c);
    }
  }
  if (next != nv) throw std::invalid_argument("child lists do not form a tree");
  return t;
}

std::vector<PlaneRootedTree> enumerate_plane_trees(int n) {
  if (n < 0) throw std::invalid_argument("negative order");
  if (n > kPlaneTreeCap) throw std::domain_error("enumeration cap exceeded");
  std::vector<PlaneRootedTree> out;
  for (const auto& f : forests_of_size(n)) out.push_back(tree_from_shape(Shape{f}));
  return out;
}

std::vector<LabeledRootedTree> enumerate_labeled_trees(int n) {
  if (n < 0) throw std::invalid_argument("negative order");
  if (n > kLabeledTreeCap) throw std::domain_error("enumeration cap exceeded");
  std::vector<LabeledRootedTree> out;
  if (n == 0) {
    out.push_back(LabeledRootedTree{{-1}});
    return out;
  }
  const int nv = n + 1;
  // Pruefer sequences over {0..n} of length n-1, in lexicographic order.
  std::vector<int> seq(n - 1, 0);
  while (true) {
    std::vector<int> deg(nv, 1);
    for (int s : seq) ++deg[s];
    std::vector<std::pair<int, int>> edges;
    for (int s : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
      deg[leaf] = 0;
      --deg[s];
    }
    int a = -1, b = -1;
    for (int v = 0; v < nv; ++v)
      if (deg[v] == 1) (a == -1 ? a : b) = v;
    edges.emplace_back(a, b);
    out.push_back(LabeledRootedTree::from_edges(nv, edges));

    int i = n - 2;
    while (i >= 0 && seq[i] == n) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

PlaneRootedTree map_m(const LabeledRootedTree& theta) {
  const int nv = theta.vertex_count();
  std::vector<std::vector<int>> ch(nv);
  for (int v = 1; v < nv; ++v) ch[theta.parent[v]].push_back(v);
  for (auto& c : ch) std::sort(c.begin(), c.end());
  return canonical_plane_tree(ch);
}

LabeledRootedTree map_theta(const PlaneRootedTree& t) {
  return LabeledRootedTree{t.parent};
}

std::vector<int> natural_labels(const LabeledRootedTree& theta) {
  const int nv = theta.vertex_count();
  std::vector<std::vector<int>> ch(nv);
  for (int v = 1; v < nv; ++v) ch[theta.parent[v]].push_back(v);
  for (auto& c : ch) std::sort(c.begin(), c.end());
  std::vector<int> pos(nv, -1);
  int next = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    pos[v] = next++;
    for (int c : ch[v]) q.push(c);
  }
  return pos;
}

std::uint64_t preimage_size_of_m(const PlaneRootedTree& t) {
  const int n = t.order();
  if (n > 20) throw std::overflow_error("preimage count overflows");
  std::uint64_t denom = 1;
  for (const auto& c : t.children) denom *= factorial(static_cast<int>(c.size()));
  return factorial(n) / denom;
}

std::strong_ordering plane_order_compare(const PlaneRootedTree& t,
                                         int u, int v) {
  if (u < 0 || u >= t.vertex_count() || v < 0 || v >= t.vertex_count())
    throw std::out_of_range("vertex not in tree");
  return u <=> v;
}

std::size_t count_unlabeled_rooted(int n) {
  std::set<std::string> classes;
  for (const auto& t : enumerate_plane_trees(n))
    classes.insert(sorted_serial(t, 0));
  return classes.size();
}

std::string to_parenthesized(const PlaneRootedTree& t) {
  std::string out;
  auto rec = [&](auto&& self, int v) -> void {
    out += "(";
    for (int c : t.children[v]) self(self, c);
    out += ")";
  };
  rec(rec, 0);
  return out;
}

}  // namespace lllgas
