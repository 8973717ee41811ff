#include "graphon_dyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon_dyn/error.hpp"
#include "graphon_dyn/parallel.hpp"

namespace graphon_dyn {

namespace {

/// Kernel values addressed by a per-node cell index, so the hot loops avoid
/// visiting the kernel variant for every pair.
struct KernelTable {
  Matrix values;
  std::vector<std::size_t> cell;

  double operator()(std::size_t i, std::size_t j) const { return values(cell[i], cell[j]); }
};

KernelTable tabulate(const EdgeKernel& k, std::span<const State> v) {
  KernelTable table;
  table.cell.resize(v.size(), 0);
  if (const auto* c = std::get_if<EdgeKernel::Constant>(&k.variant())) {
    table.values = Matrix(1, c->p);
    return table;
  }
  const std::size_t d = k.dimension();
  table.values = k.is_block() ? std::get<EdgeKernel::Block>(k.variant()).values
                              : std::get<EdgeKernel::Grid>(k.variant()).values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (k.is_block()) {
      const auto* s = std::get_if<std::size_t>(&v[i]);
      if (s == nullptr || *s >= d) {
        throw InvalidInput("state of node " + std::to_string(i + 1) +
                           " is outside the block kernel's domain");
      }
      table.cell[i] = *s;
    } else {
      const auto* x = std::get_if<double>(&v[i]);
      if (x == nullptr || !(*x >= 0.0 && *x <= 1.0)) {
        throw InvalidInput("state of node " + std::to_string(i + 1) +
                           " is outside the grid kernel's domain [0,1]");
      }
      table.cell[i] = std::min(d - 1, static_cast<std::size_t>(*x * static_cast<double>(d)));
    }
  }
  return table;
}

/// Finite description used for exact marginals: kernel values over states and
/// one probability vector per node.
struct FiniteModel {
  Matrix values;
  std::vector<std::vector<double>> masses;
};

FiniteModel finite_model(const EdgeKernel& k, std::span<const Distribution> per_node) {
  FiniteModel model;
  if (const auto* c = std::get_if<EdgeKernel::Constant>(&k.variant())) {
    model.values = Matrix(1, c->p);
    model.masses.assign(per_node.size(), {1.0});
    return model;
  }
  if (const auto* g = std::get_if<EdgeKernel::Grid>(&k.variant())) {
    // uniform states hit each of the r cells with mass 1/r
    const std::size_t r = g->values.size();
    for (const auto& dist : per_node) {
      if (dist.is_finite()) {
        throw InvalidInput("grid kernel needs uniform states on [0,1], got a finite distribution");
      }
    }
    model.values = g->values;
    model.masses.assign(per_node.size(), std::vector<double>(r, 1.0 / static_cast<double>(r)));
    return model;
  }
  const auto& b = std::get<EdgeKernel::Block>(k.variant());
  for (std::size_t i = 0; i < per_node.size(); ++i) {
    const auto& dist = per_node[i];
    if (!dist.is_finite()) {
      throw InvalidInput("exact marginal needs finite states; node " + std::to_string(i + 1) +
                         " has a continuous distribution");
    }
    if (dist.size() != b.values.size()) {
      throw InvalidInput("block kernel is " + std::to_string(b.values.size()) + "x" +
                         std::to_string(b.values.size()) + " but node " + std::to_string(i + 1) +
                         " has " + std::to_string(dist.size()) + " states");
    }
    model.masses.push_back(dist.masses());
  }
  model.values = b.values;
  return model;
}

class MarginalSum {
 public:
  MarginalSum(const SimpleGraph& a, const FiniteModel& model)
      : a_(a), model_(model), states_(static_cast<std::size_t>(a.order()), 0) {}

  double run() { return extend(0, 1.0); }

 private:
  double extend(std::size_t node, double weight) {
    if (node == states_.size()) return weight;
    double total = 0.0;
    const auto& masses = model_.masses[node];
    for (std::size_t s = 0; s < masses.size(); ++s) {
      double term = weight * masses[s];
      for (std::size_t j = 0; j < node && term != 0.0; ++j) {
        const double e = model_.values(states_[j], s);
        term *= a_.has_edge(static_cast<Vertex>(j + 1), static_cast<Vertex>(node + 1)) ? e : 1.0 - e;
      }
      if (term == 0.0) continue;
      states_[node] = s;
      total += extend(node + 1, term);
    }
    return total;
  }

  const SimpleGraph& a_;
  const FiniteModel& model_;
  std::vector<std::size_t> states_;
};

}  // namespace

double conditional_prob(const SimpleGraph& a, std::span<const State> v, const EdgeKernel& k) {
  if (v.size() != static_cast<std::size_t>(a.order())) {
    throw InvalidInput("state vector has " + std::to_string(v.size()) + " entries but the graph has " +
                       std::to_string(a.order()) + " vertices");
  }
  const KernelTable table = tabulate(k, v);
  const std::size_t n = v.size();
  const bool log_space = n >= 40;
  double prob = 1.0;
  double log_prob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double e = table(i, j);
      const double factor =
          a.has_edge(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1)) ? e : 1.0 - e;
      if (factor == 0.0) return 0.0;
      if (log_space) {
        log_prob += std::log(factor);
      } else {
        prob *= factor;
      }
    }
  }
  return log_space ? std::exp(log_prob) : prob;
}

double marginal_prob(const SimpleGraph& a, std::span<const Distribution> per_node,
                     const EdgeKernel& k) {
  if (per_node.size() != static_cast<std::size_t>(a.order())) {
    throw InvalidInput("need one distribution per vertex: got " + std::to_string(per_node.size()) +
                       " for " + std::to_string(a.order()) + " vertices");
  }
  const FiniteModel model = finite_model(k, per_node);
  double tuples = 1.0;
  for (const auto& m : model.masses) tuples *= static_cast<double>(m.size());
  if (tuples > kMaxStateTuples) {
    throw UnsupportedSize("exact marginal needs " + std::to_string(tuples) +
                          " state tuples (limit 1e8); estimate it by sampling instead");
  }
  return MarginalSum(a, model).run();
}

double marginal_prob(const SimpleGraph& a, const Distribution& dist, const EdgeKernel& k) {
  const std::vector<Distribution> per_node(static_cast<std::size_t>(a.order()), dist);
  return marginal_prob(a, per_node, k);
}

SimpleGraph sample_graph(const EdgeKernel& k, std::span<const State> v, Seed seed) {
  if (v.empty()) throw InvalidInput("need at least one node to sample a graph");
  const KernelTable table = tabulate(k, v);
  const std::size_t n = v.size();
  std::vector<std::vector<Edge>> rows(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = table(i, j);
      if (p <= 0.0) continue;
      const double u = unit_from_seed(derive_seed(seed, "edge", {i + 1, j + 1}));
      if (u < p) rows[i].emplace_back(static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1));
    }
  });
  std::vector<Edge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return SimpleGraph::make(static_cast<int>(n), std::move(edges));
}

GraphTrajectory simulate_trajectory(const StateProcess& process, const EdgeKernel& k,
                                    std::size_t n_nodes, std::size_t steps, Seed seed) {
  if (n_nodes < 2) throw InvalidInput("a trajectory needs at least 2 nodes");
  if (steps < 1) throw InvalidInput("a trajectory needs at least 1 step");
  k.check_compatible(process.space());

  StateTrajectory states = sample_states(process, n_nodes, steps, derive_seed(seed, "states"));
  std::vector<SimpleGraph> snapshots(steps, empty_graph(static_cast<int>(n_nodes)));
  for (std::size_t t = 0; t < steps; ++t) {
    snapshots[t] = sample_graph(k, states.slice(t), derive_seed(seed, "step", {t}));
  }
  return GraphTrajectory{std::move(snapshots), std::move(states), k, seed, process.stationary(),
                         process.weakly_mixing()};
}

GraphTrajectory simulate_mixture_trajectory(const KernelMixture& m, const StateProcess& process,
                                            std::size_t n_nodes, std::size_t steps, Seed seed) {
  for (const auto& comp : m.components()) comp.kernel.check_compatible(process.space());
  return simulate_trajectory(process, sample_kernel(m, seed), n_nodes, steps, seed);
}

}  // namespace graphon_dyn
