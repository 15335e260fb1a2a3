#include "lllgas/mt_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lllgas/rng.hpp"

namespace lllgas {
namespace {

void check_events(const VariableModel& m, const std::vector<EventSpec>& events,
                  const DependencyGraph& g) {
  if (static_cast<int>(events.size()) != g.size())
    throw std::invalid_argument("model/graph inconsistency");
  for (std::size_t x = 0; x < events.size(); ++x) {
    const auto& e = events[x];
    if (e.id != static_cast<VertexId>(x))
      throw std::invalid_argument("event ids must match their positions");
    if (e.vbl.empty()) throw std::invalid_argument("unconstrained event");
    if (!std::is_sorted(e.vbl.begin(), e.vbl.end()) ||
        std::adjacent_find(e.vbl.begin(), e.vbl.end()) != e.vbl.end())
      throw std::invalid_argument("event variable list not sorted");
    if (e.vbl.front() < 0 || e.vbl.back() >= m.variable_count())
      throw std::invalid_argument("event variable outside model");
    if (!e.occurs) throw std::invalid_argument("event without predicate");
  }

  // The graph must be exactly the variable-overlap graph.
  for (std::size_t x = 0; x < events.size(); ++x)
    for (std::size_t y = x + 1; y < events.size(); ++y) {
      const auto& a = events[x].vbl;
      const auto& b = events[y].vbl;
      std::size_t i = 0, j = 0;
      bool overlap = false;
      while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { overlap = true; break; }
        if (a[i] < b[j]) ++i; else ++j;
      }
      if (overlap != g.adjacent(static_cast<int>(x), static_cast<int>(y)))
        throw std::invalid_argument("model/graph inconsistency");
    }
}

std::vector<int> gather(const Assignment& assignment,
                        const std::vector<int>& vbl) {
  std::vector<int> values(vbl.size());
  for (std::size_t i = 0; i < vbl.size(); ++i) values[i] = assignment[vbl[i]];
  return values;
}

}  // namespace

VariableModel VariableModel::fair_bits(int n) {
  VariableModel m;
  m.variables.assign(n, DiscreteDistribution{{0.5, 0.5}});
  return m;
}

void VariableModel::validate() const {
  for (const auto& v : variables) {
    if (v.probabilities.empty())
      throw std::invalid_argument("variable with empty domain");
    double sum = 0.0;
    for (double p : v.probabilities) {
      if (!(p >= 0.0)) throw std::invalid_argument("negative outcome probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("outcome probabilities do not sum to 1");
  }
}

double exact_event_probability(const EventSpec& e, const VariableModel& m,
                               std::uint64_t cap) {
  m.validate();
  if (e.vbl.empty()) throw std::invalid_argument("unconstrained event");
  std::uint64_t combinations = 1;
  for (int v : e.vbl) {
    if (v < 0 || v >= m.variable_count())
      throw std::invalid_argument("event variable outside model");
    const std::uint64_t d = m.variables[v].probabilities.size();
    if (combinations > cap / d) throw std::domain_error("exact probability cap exceeded");
    combinations *= d;
  }
  std::vector<int> values(e.vbl.size(), 0);
  double total = 0.0;
  while (true) {
    if (e.occurs(values)) {
      double w = 1.0;
      for (std::size_t i = 0; i < e.vbl.size(); ++i)
        w *= m.variables[e.vbl[i]].probabilities[values[i]];
      total += w;
    }
    std::size_t i = 0;
    while (i < values.size()) {
      const int d = static_cast<int>(m.variables[e.vbl[i]].probabilities.size());
      if (++values[i] < d) break;
      values[i++] = 0;
    }
    if (i == values.size()) break;
  }
  return total;
}

ExecutionLog run_mt(const VariableModel& m, const std::vector<EventSpec>& events,
                    const DependencyGraph& g, std::uint64_t seed,
                    std::uint64_t step_cap, SelectionRule rule) {
  m.validate();
  check_events(m, events, g);
  if (step_cap < 1) throw std::invalid_argument("step cap must be positive");

  std::mt19937_64 rng(seed);
  ExecutionLog log;
  log.seed = seed;
  log.rule = rule;
  log.counts.assign(events.size(), 0);

  Assignment assignment(m.variable_count());
  for (int v = 0; v < m.variable_count(); ++v)
    assignment[v] = sample_index(rng, m.variables[v].probabilities);

  std::vector<int> violated;
  while (true) {
    violated.clear();
    for (const auto& e : events) {
      if (e.occurs(gather(assignment, e.vbl))) {
        violated.push_back(e.id);
        if (rule == SelectionRule::lowest_index) break;
      }
    }
    if (violated.empty()) {
      log.terminated = true;
      break;
    }
    if (log.steps.size() >= step_cap) {
      log.terminated = false;
      break;
    }
    const int pick = rule == SelectionRule::lowest_index
                         ? violated.front()
                         : violated[sample_below(rng, static_cast<int>(violated.size()))];
    log.steps.push_back(pick);
    ++log.counts[pick];
    for (int v : events[pick].vbl)
      assignment[v] = sample_index(rng, m.variables[v].probabilities);
  }
  log.final_assignment = std::move(assignment);
  return log;
}

namespace {

// Drawing position of a node: child indices along the root path. Same-depth
// nodes compare by this path exactly as the natural labels would order them,
// and inserting later nodes never reorders existing ones.
std::vector<int> drawing_path(const std::vector<std::vector<int>>& children,
                              const std::vector<int>& parent, int v) {
  std::vector<int> path;
  while (parent[v] >= 0) {
    const auto& sib = children[parent[v]];
    path.push_back(
        static_cast<int>(std::find(sib.begin(), sib.end(), v) - sib.begin()));
    v = parent[v];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

WitnessTree witness_tree(const ExecutionLog& log, std::size_t s,
                         const DependencyGraph& g, WitnessTieBreak tie) {
  if (s < 1 || s > log.steps.size())
    throw std::out_of_range("step index out of range");

  std::vector<VertexId> label{log.steps[s - 1]};
  std::vector<int> parent{-1};
  std::vector<int> depth{0};
  std::vector<std::vector<int>> children{{}};

  for (std::size_t i = s - 1; i >= 1; --i) {
    const VertexId c = log.steps[i - 1];
    int best = -1;
    std::vector<int> best_path;
    for (std::size_t v = 0; v < label.size(); ++v) {
      if (g.compatible(label[v], c)) continue;
      if (best >= 0 && depth[v] < depth[best]) continue;
      auto path = drawing_path(children, parent, static_cast<int>(v));
      if (best >= 0 && depth[v] == depth[best]) {
        const bool replace = tie == WitnessTieBreak::youngest
                                 ? path > best_path
                                 : path < best_path;
        if (!replace) continue;
      }
      best = static_cast<int>(v);
      best_path = std::move(path);
    }
    if (best < 0) continue;

    const int node = static_cast<int>(label.size());
    label.push_back(c);
    parent.push_back(best);
    depth.push_back(depth[best] + 1);
    children.emplace_back();
    auto& sib = children[best];
    auto it = sib.begin();
    while (it != sib.end() && label[*it] < c) ++it;
    if (it != sib.end() && label[*it] == c)
      throw std::logic_error("duplicate sibling label");
    sib.insert(it, node);
  }

  WitnessTree tau;
  tau.tree = canonical_plane_tree(children);
  tau.labels.assign(label.size(), -1);
  // canonical_plane_tree assigns natural labels by the same breadth-first
  // walk; replay it to align event labels with natural positions.
  std::vector<int> order{0};
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int ch : children[order[head]]) order.push_back(ch);
  for (std::size_t natural = 0; natural < order.size(); ++natural)
    tau.labels[natural] = label[order[natural]];
  return tau;
}

WitnessStats collect_witness_stats(const ExecutionLog& log,
                                   const DependencyGraph& g,
                                   const std::vector<std::size_t>& sample_steps,
                                   const std::vector<double>& p,
                                   WitnessTieBreak tie) {
  if (static_cast<int>(p.size()) != g.size())
    throw std::invalid_argument("probability vector length mismatch");
  WitnessStats stats;
  std::map<VertexId, std::set<std::string>> distinct;
  for (std::size_t s : sample_steps) {
    WitnessSample sample;
    sample.step = s;
    sample.tree = witness_tree(log, s, g, tie);
    sample.penrose = is_penrose_witness(sample.tree, g);
    sample.weight = 1.0;
    for (VertexId x : sample.tree.labels) sample.weight *= p[x];
    distinct[sample.tree.labels[0]].insert(serialize_witness(sample.tree));
    stats.samples.push_back(std::move(sample));
  }
  for (const auto& [root, serials] : distinct)
    stats.distinct_by_root[root] = serials.size();
  return stats;
}

}  // namespace lllgas
