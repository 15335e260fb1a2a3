#pragma once
// Resample-until-quiet solver over a model of independent finite variables,
// with a reproducible execution log and the deterministic witness-tree
// construction that justifies each logged resampling.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "lllgas/depgraph.hpp"
#include "lllgas/penrose.hpp"

namespace lllgas {

struct DiscreteDistribution {
  std::vector<double> probabilities;  // outcome k has probabilities[k]
};

struct VariableModel {
  std::vector<DiscreteDistribution> variables;

  static VariableModel fair_bits(int n);
  int variable_count() const { return static_cast<int>(variables.size()); }
  void validate() const;
};

using Assignment = std::vector<int>;

struct EventSpec {
  VertexId id = 0;
  std::vector<int> vbl;  // sorted ascending, no duplicates
  // Receives the current values of vbl, in vbl order; true means violated.
  std::function<bool(const std::vector<int>&)> occurs;
  double probability = 0.0;
};

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000;
inline constexpr std::uint64_t kExactProbabilityCap = std::uint64_t{1} << 20;

// Probability of the event under the product measure, by enumerating the
// domain product of its variables.
double exact_event_probability(const EventSpec& e, const VariableModel& m,
                               std::uint64_t cap = kExactProbabilityCap);

enum class SelectionRule { lowest_index, uniform_random };

struct ExecutionLog {
  std::uint64_t seed = 0;
  SelectionRule rule = SelectionRule::lowest_index;
  std::vector<VertexId> steps;  // events in resampling order
  bool terminated = false;      // false when the step cap cut the run short
  std::vector<std::uint64_t> counts;
  Assignment final_assignment;

  bool operator==(const ExecutionLog&) const = default;
};

// Samples every variable, then repeatedly picks a violated event by `rule`
// and redraws exactly its variables, logging each pick. Draws are consumed
// in variable-id order so runs replay exactly.
ExecutionLog run_mt(const VariableModel& m, const std::vector<EventSpec>& events,
                    const DependencyGraph& g, std::uint64_t seed,
                    std::uint64_t step_cap = kDefaultStepCap,
                    SelectionRule rule = SelectionRule::lowest_index);

// Which vertex of the deepest incompatible set receives the next child: the
// one drawn lowest (plane-order maximal, default) or highest.
enum class WitnessTieBreak { youngest, oldest };

// Witness tree of step s (1-based): root labeled steps[s-1]; walking earlier
// steps, each label incompatible with something already present is attached
// under the deepest such vertex, children kept in increasing label order.
WitnessTree witness_tree(const ExecutionLog& log, std::size_t s,
                         const DependencyGraph& g,
                         WitnessTieBreak tie = WitnessTieBreak::youngest);

struct WitnessSample {
  std::size_t step = 0;
  WitnessTree tree;
  bool penrose = false;
  double weight = 0.0;  // product of event probabilities over the labels
};

struct WitnessStats {
  std::vector<WitnessSample> samples;
  std::map<VertexId, std::size_t> distinct_by_root;
};

WitnessStats collect_witness_stats(const ExecutionLog& log,
                                   const DependencyGraph& g,
                                   const std::vector<std::size_t>& sample_steps,
                                   const std::vector<double>& p,
                                   WitnessTieBreak tie = WitnessTieBreak::youngest);

}  // namespace lllgas
