#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphon_dyn/dynamics.hpp"

namespace graphon_dyn {

/// Time shift: drops the first `steps` slices. Throws InvalidInput unless
/// steps < traj.steps().
StateTrajectory shift(const StateTrajectory& traj, std::size_t steps);

enum class MatchMode { isomorphic, labeled };

struct RecurrenceReport {
  SimpleGraph pattern;
  std::vector<Vertex> watched_nodes;
  std::vector<std::size_t> return_times;  // strictly increasing, in [0, horizon)
  std::size_t horizon = 0;
  /// Set when the generating process is not stationary.
  bool hypothesis_unmet = false;

  /// Number of returns in [0, t).
  std::size_t count_before(std::size_t t) const;
};

/// Times t at which the subgraph of snapshots[t] induced on watched_nodes
/// (in the given order) matches the pattern.
RecurrenceReport recurrence_count(const GraphTrajectory& traj, const SimpleGraph& pattern,
                                  std::span<const Vertex> watched_nodes,
                                  MatchMode mode = MatchMode::isomorphic);

struct BirkhoffSeries {
  std::vector<double> partial_averages;  // partial_averages[n-1] = (1/n) sum_{i<n}
  double target = 0.0;
  std::size_t horizon = 0;
  /// Set when the process is not weakly mixing.
  bool hypothesis_unmet = false;
};

/// Time averages of P_e(A_G | v_t) along one state path per pattern vertex,
/// where A_G is the pattern as a labeled graph. The target is
/// marginal_prob(A_G, limit marginal, k).
BirkhoffSeries birkhoff_average(const StateProcess& process, const EdgeKernel& k,
                                const SimpleGraph& pattern, std::size_t n_steps, Seed seed);

}  // namespace graphon_dyn
