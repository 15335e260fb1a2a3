#pragma once
// Hard-core gas quantities on a finite dependency graph: the independence
// polynomial (partition function), pressure, the one-point function both as
// an exact ratio and as a truncated positive-term tree series, the
// Dobrushin / Fernandez-Procacci / zero-freeness convergence checks, and the
// certified expected-resampling bounds.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lllgas/depgraph.hpp"

namespace lllgas {

using ActivityVector = std::vector<double>;

struct PerVertexCheck {
  VertexId id = 0;
  bool pass = false;
  double slack = 0.0;
  double t_bound = 0.0;

  bool operator==(const PerVertexCheck&) const = default;
};

struct ConvergenceReport {
  std::string criterion;
  std::vector<PerVertexCheck> per_vertex;
  bool all_pass = false;
  std::optional<double> total_bound;    // set when every vertex passes
  std::optional<double> xi_at_minus_p;  // good-event lower bound, when known

  bool operator==(const ConvergenceReport&) const = default;
};

struct ShearerResult {
  bool in_region = false;
  bool marginal = false;  // positive but within the guard band somewhere
  std::optional<VertexSet> witness;
  double xi_full = 0.0;
};

class OutsideRegionError : public std::runtime_error {
 public:
  OutsideRegionError(const std::string& msg, VertexSet witness)
      : std::runtime_error(msg), witness_(witness) {}
  VertexSet witness() const { return witness_; }

 private:
  VertexSet witness_;
};

inline constexpr double kShearerGuardBand = 1e-12;
inline constexpr int kParanoidShearerCap = 22;
inline constexpr int kMuIterationCap = 1000;

// Sum over independent subsets Y of `domain` of the product of w over Y,
// by the deletion recursion on the lowest-index pivot.
double partition_function(const DependencyGraph& g, const ActivityVector& w,
                          VertexSet domain);
double partition_function(const DependencyGraph& g, const ActivityVector& w);

// log(Xi_X(w)) / |X|.
double pressure(const DependencyGraph& g, const ActivityVector& w);

// One-point function: Xi over the complement of the closed neighborhood of
// x0, divided by Xi over everything.
double pi_exact(const DependencyGraph& g, VertexId x0, const ActivityVector& w);

// Partial sums S_0..S_n_max of the positive-term witness-tree series for the
// one-point function at activity rho >= 0. S_0 = 1; the sequence is
// nondecreasing and converges upward to pi_exact(g, x0, -rho) inside the
// convergence region.
std::vector<double> pi_series_truncated(const DependencyGraph& g, VertexId x0,
                                        const ActivityVector& rho, int n_max);

double dobrushin_denominator(const DependencyGraph& g,
                             const ActivityVector& mu, VertexId x);

// Sum of mu products over independent subsets of the closed neighborhood.
double fp_denominator(const DependencyGraph& g, const ActivityVector& mu,
                      VertexId x);

// Per-vertex test p_x * prod_{y in closed nbhd}(1 + mu_y) <= mu_x.
ConvergenceReport check_dobrushin(const DependencyGraph& g,
                                  const ActivityVector& p,
                                  const ActivityVector& mu);

// Per-vertex test p_x * fp_denominator(x) <= mu_x; weaker denominator than
// Dobrushin's product, so anything passing Dobrushin passes here too.
ConvergenceReport check_fp(const DependencyGraph& g, const ActivityVector& p,
                           const ActivityVector& mu);

// Iterates mu <- p * fp_denominator(mu) from mu = p; converges to the least
// fixed point when one exists. `diverged` (when given) reports blow-up.
ActivityVector find_mu_fixed_point(const DependencyGraph& g,
                                   const ActivityVector& p,
                                   bool* diverged = nullptr,
                                   int max_iters = kMuIterationCap);

// Positivity of Xi_Y(-p) over every subset the deletion recursion reaches
// from the full set; paranoid mode checks all 2^|X| subsets instead.
ShearerResult check_shearer_region(const DependencyGraph& g,
                                   const ActivityVector& p,
                                   bool paranoid = false,
                                   double guard_band = kShearerGuardBand);

// Certified expected-resampling bounds T_x = p_x * pi_exact(g, x, -p).
// Throws OutsideRegionError when the positivity check fails.
ConvergenceReport mt_bounds(const DependencyGraph& g, const ActivityVector& p);

// The alternative aggregate bound |X| * |pressure(-p)|.
double mt_pressure_bound(const DependencyGraph& g, const ActivityVector& p);

}  // namespace lllgas
