#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphon_dyn/edge_kernel.hpp"
#include "graphon_dyn/graph.hpp"
#include "graphon_dyn/state_process.hpp"

namespace graphon_dyn {

/// P_e(A | v) = prod_{i<j} e(v_i,v_j)^{A_ij} (1 - e(v_i,v_j))^{1 - A_ij}.
/// Accumulated in log space from 40 vertices on.
double conditional_prob(const SimpleGraph& a, std::span<const State> v, const EdgeKernel& k);

inline constexpr double kMaxStateTuples = 1e8;

/// P_{G_e(V)}(A) = sum over state tuples of P_e(A | v) prod_i dist(v_i), with
/// V i.i.d. from dist. Grid kernels under the uniform law are summed over grid
/// cells. Throws UnsupportedSize beyond kMaxStateTuples tuples.
double marginal_prob(const SimpleGraph& a, const Distribution& dist, const EdgeKernel& k);

/// Same sum with node i drawn from per_node[i] (independent, not identical).
double marginal_prob(const SimpleGraph& a, std::span<const Distribution> per_node,
                     const EdgeKernel& k);

/// Includes each pair {i, j} independently with probability e(v_i, v_j),
/// using the draw unit_from_seed(derive_seed(seed, "edge", {i, j})); the
/// result does not depend on iteration order.
SimpleGraph sample_graph(const EdgeKernel& k, std::span<const State> v, Seed seed);

struct GraphTrajectory {
  std::vector<SimpleGraph> snapshots;
  StateTrajectory states;
  EdgeKernel kernel_used;
  Seed seed = 0;
  bool process_stationary = false;
  bool process_weakly_mixing = false;

  std::size_t steps() const noexcept { return snapshots.size(); }
};

/// States from derive_seed(seed, "states"); snapshot t from
/// derive_seed(seed, "step", {t}). Edges are resampled at every step,
/// independently given the states.
GraphTrajectory simulate_trajectory(const StateProcess& process, const EdgeKernel& k,
                                    std::size_t n_nodes, std::size_t steps, Seed seed);

/// Draws a single kernel for the whole trajectory, then simulate_trajectory.
GraphTrajectory simulate_mixture_trajectory(const KernelMixture& m, const StateProcess& process,
                                            std::size_t n_nodes, std::size_t steps, Seed seed);

}  // namespace graphon_dyn
