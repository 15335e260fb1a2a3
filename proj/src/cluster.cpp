#include "lllgas/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

namespace lllgas {
namespace {

void check_activities(const DependencyGraph& g, const ActivityVector& w) {
  if (static_cast<int>(w.size()) != g.size())
    throw std::invalid_argument("activity vector length mismatch");
  for (double v : w)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite activity");
}

void check_nonnegative(const ActivityVector& v) {
  for (double x : v)
    if (x < 0.0) throw std::invalid_argument("negative inputs");
}

class XiEvaluator {
 public:
  XiEvaluator(const DependencyGraph& g, const ActivityVector& w)
      : g_(g), w_(w) {
    gamma_star_.reserve(g.size());
    for (int x = 0; x < g.size(); ++x)
      gamma_star_.push_back(g.closed_neighborhood(x));
  }

  double eval(VertexSet s) {
    if (s == 0) return 1.0;
    const auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    const int x = std::countr_zero(s);
    const double value = eval(s & (s - 1)) + w_[x] * eval(s & ~gamma_star_[x]);
    memo_.emplace(s, value);
    return value;
  }

  // Walks the recursion while recording the first nonpositive subset and the
  // smallest positive value seen; used by the region check.
  void scan(VertexSet s, std::optional<VertexSet>& bad, double& min_positive) {
    if (s == 0) return;
    if (memo_.count(s)) return;
    const int x = std::countr_zero(s);
    scan(s & (s - 1), bad, min_positive);
    scan(s & ~gamma_star_[x], bad, min_positive);
    const double value = eval(s);
    if (value <= 0.0) {
      if (!bad) bad = s;
    } else {
      min_positive = std::min(min_positive, value);
    }
  }

 private:
  const DependencyGraph& g_;
  const ActivityVector& w_;
  std::vector<VertexSet> gamma_star_;
  std::unordered_map<VertexSet, double> memo_;
};

}  // namespace

double partition_function(const DependencyGraph& g, const ActivityVector& w,
                          VertexSet domain) {
  check_activities(g, w);
  if (domain & ~g.full_set())
    throw std::out_of_range("subset outside vertex range");
  XiEvaluator xi(g, w);
  return xi.eval(domain);
}

double partition_function(const DependencyGraph& g, const ActivityVector& w) {
  return partition_function(g, w, g.full_set());
}

double pressure(const DependencyGraph& g, const ActivityVector& w) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  const double xi = partition_function(g, w);
  if (xi <= 0.0) throw std::runtime_error("outside zero-free region");
  return std::log(xi) / g.size();
}

double pi_exact(const DependencyGraph& g, VertexId x0,
                const ActivityVector& w) {
  const double denom = partition_function(g, w);
  if (denom == 0.0) throw std::runtime_error("partition function vanishes");
  const double numer =
      partition_function(g, w, g.full_set() & ~g.closed_neighborhood(x0));
  return numer / denom;
}

std::vector<double> pi_series_truncated(const DependencyGraph& g, VertexId x0,
                                        const ActivityVector& rho, int n_max) {
  check_activities(g, rho);
  check_nonnegative(rho);
  if (x0 < 0 || x0 >= g.size()) throw std::out_of_range("root outside graph");
  if (n_max < 0) throw std::invalid_argument("negative truncation order");
  g.full_set();  // exact-mode guard

  // Levels of the tree are ordered tuples of distinct, pairwise-compatible
  // labels; a label extends a level at exactly one attachment point (the
  // last incompatible position), so trees correspond one-to-one with level
  // sequences and the series is a DP over level states.
  constexpr std::size_t kStateCap = std::size_t{1} << 20;
  std::vector<double> term(static_cast<std::size_t>(n_max) + 1, 0.0);
  term[0] = 1.0;

  using State = std::vector<VertexId>;
  using Poly = std::map<int, double>;  // vertex count -> accumulated weight
  std::map<State, Poly> frontier;
  frontier[{x0}] = {{0, 1.0}};

  for (int depth = 0; depth < n_max && !frontier.empty(); ++depth) {
    std::map<State, Poly> next;
    for (const auto& [state, poly] : frontier) {
      // Attachment point per label: the last level position incompatible
      // with it; labels with none cannot join the next level.
      std::vector<int> attach(g.size(), -1);
      for (std::size_t k = 0; k < state.size(); ++k) {
        VertexSet nb = g.closed_neighborhood(state[k]);
        while (nb) {
          const int y = std::countr_zero(nb);
          nb &= nb - 1;
          attach[y] = static_cast<int>(k);
        }
      }
      VertexSet placeable = 0;
      for (int y = 0; y < g.size(); ++y)
        if (attach[y] >= 0) placeable |= VertexSet{1} << y;

      for (VertexSet ys : g.independent_subsets_of(placeable)) {
        if (ys == 0) continue;
        std::vector<std::pair<int, int>> keyed;  // (attach pos, label)
        double weight = 1.0;
        VertexSet rest = ys;
        while (rest) {
          const int y = std::countr_zero(rest);
          rest &= rest - 1;
          keyed.emplace_back(attach[y], y);
          weight *= rho[y];
        }
        std::sort(keyed.begin(), keyed.end());
        State child;
        child.reserve(keyed.size());
        for (const auto& [k, y] : keyed) child.push_back(y);
        const int added = static_cast<int>(child.size());
        Poly& target = next[std::move(child)];
        for (const auto& [count, value] : poly) {
          if (count + added > n_max) continue;
          target[count + added] += value * weight;
        }
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.empty()) {
        it = next.erase(it);
        continue;
      }
      for (const auto& [count, value] : it->second) term[count] += value;
      ++it;
    }
    if (next.size() > kStateCap) throw std::domain_error("exact mode cap exceeded");
    frontier = std::move(next);
  }

  std::vector<double> sums(term.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < term.size(); ++i) {
    acc += term[i];
    sums[i] = acc;
  }
  return sums;
}

double dobrushin_denominator(const DependencyGraph& g,
                             const ActivityVector& mu, VertexId x) {
  std::vector<VertexId> members(g.neighbors(x));
  members.insert(std::lower_bound(members.begin(), members.end(), x), x);
  double prod = 1.0;
  for (VertexId y : members) prod *= 1.0 + mu[y];
  return prod;
}

double fp_denominator(const DependencyGraph& g, const ActivityVector& mu,
                      VertexId x) {
  double sum = 0.0;
  for (VertexSet r : g.independent_subsets_of(g.closed_neighborhood(x))) {
    double prod = 1.0;
    while (r) {
      const int y = std::countr_zero(r);
      r &= r - 1;
      prod *= mu[y];
    }
    sum += prod;
  }
  return sum;
}

namespace {

ConvergenceReport criterion_report(
    const DependencyGraph& g, const ActivityVector& p, const ActivityVector& mu,
    const std::string& name,
    double (*denominator)(const DependencyGraph&, const ActivityVector&,
                          VertexId)) {
  check_activities(g, p);
  check_activities(g, mu);
  check_nonnegative(p);
  check_nonnegative(mu);
  ConvergenceReport report;
  report.criterion = name;
  report.all_pass = true;
  double total = 0.0;
  for (int x = 0; x < g.size(); ++x) {
    const double demand = p[x] * denominator(g, mu, x);
    PerVertexCheck c;
    c.id = x;
    c.pass = demand <= mu[x];
    c.slack = mu[x] - demand;
    c.t_bound = mu[x];
    report.all_pass = report.all_pass && c.pass;
    total += c.t_bound;
    report.per_vertex.push_back(c);
  }
  if (report.all_pass) report.total_bound = total;
  return report;
}

}  // namespace

ConvergenceReport check_dobrushin(const DependencyGraph& g,
                                  const ActivityVector& p,
                                  const ActivityVector& mu) {
  return criterion_report(g, p, mu, "dobrushin", dobrushin_denominator);
}

ConvergenceReport check_fp(const DependencyGraph& g, const ActivityVector& p,
                           const ActivityVector& mu) {
  return criterion_report(g, p, mu, "fernandez_procacci", fp_denominator);
}

ActivityVector find_mu_fixed_point(const DependencyGraph& g,
                                   const ActivityVector& p, bool* diverged,
                                   int max_iters) {
  check_activities(g, p);
  check_nonnegative(p);
  if (diverged) *diverged = false;
  ActivityVector mu(p);
  for (int iter = 0; iter < max_iters; ++iter) {
    ActivityVector next(g.size());
    for (int x = 0; x < g.size(); ++x) {
      next[x] = p[x] * fp_denominator(g, mu, x);
      if (!std::isfinite(next[x]) || next[x] > 1e100) {
        if (diverged) *diverged = true;
        return next;
      }
    }
    if (next == mu) return mu;
    mu = std::move(next);
  }
  return mu;
}

ShearerResult check_shearer_region(const DependencyGraph& g,
                                   const ActivityVector& p, bool paranoid,
                                   double guard_band) {
  check_activities(g, p);
  check_nonnegative(p);
  ActivityVector w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = -p[i];

  ShearerResult result;
  double min_positive = 1.0;

  if (!paranoid) {
    XiEvaluator xi(g, w);
    std::optional<VertexSet> bad;
    xi.scan(g.full_set(), bad, min_positive);
    result.xi_full = xi.eval(g.full_set());
    result.witness = bad;
    result.in_region = !bad.has_value();
  } else {
    if (g.size() > kParanoidShearerCap)
      throw std::domain_error("graph too large for exact mode");
    const std::size_t total = std::size_t{1} << g.size();
    std::vector<double> xi(total);
    xi[0] = 1.0;
    std::vector<VertexSet> gamma_star;
    for (int x = 0; x < g.size(); ++x)
      gamma_star.push_back(g.closed_neighborhood(x));
    std::optional<VertexSet> bad;
    for (std::size_t s = 1; s < total; ++s) {
      const int x = std::countr_zero(s);
      xi[s] = xi[s & (s - 1)] + w[x] * xi[s & ~gamma_star[x]];
      if (xi[s] <= 0.0) {
        if (!bad) bad = s;
      } else {
        min_positive = std::min(min_positive, xi[s]);
      }
    }
    result.xi_full = xi[total - 1];
    result.witness = bad;
    result.in_region = !bad.has_value();
  }
  result.marginal = result.in_region && min_positive <= guard_band;
  return result;
}

ConvergenceReport mt_bounds(const DependencyGraph& g, const ActivityVector& p) {
  const ShearerResult region = check_shearer_region(g, p);
  if (!region.in_region)
    throw OutsideRegionError("outside zero-free region",
                             region.witness.value_or(0));
  ActivityVector w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = -p[i];

  ConvergenceReport report;
  report.criterion = "mt_bounds";
  report.all_pass = true;
  double total = 0.0;
  for (int x = 0; x < g.size(); ++x) {
    PerVertexCheck c;
    c.id = x;
    c.pass = true;
    c.slack = 0.0;
    c.t_bound = p[x] * pi_exact(g, x, w);
    total += c.t_bound;
    report.per_vertex.push_back(c);
  }
  report.total_bound = total;
  report.xi_at_minus_p = region.xi_full;
  return report;
}

double mt_pressure_bound(const DependencyGraph& g, const ActivityVector& p) {
  ActivityVector w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = -p[i];
  return g.size() * std::abs(pressure(g, w));
}

}  // namespace lllgas
