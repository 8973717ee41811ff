#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "graphon_dyn/graphon.hpp"
#include "graphon_dyn/rng.hpp"

namespace graphon_dyn {

/// A node state: an index into a finite state space, or a point of [0,1].
using State = std::variant<std::size_t, double>;

class StateSpace {
 public:
  static StateSpace finite(std::vector<std::string> labels);
  /// Finite space labeled s0..s{m-1}.
  static StateSpace finite(std::size_t m);
  static StateSpace unit_interval();

  bool is_finite() const noexcept { return finite_; }
  /// Number of finite states; 0 for the unit interval.
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t index_of(const std::string& label) const;
  bool contains(const State& s) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  StateSpace(bool finite, std::vector<std::string> labels)
      : finite_(finite), labels_(std::move(labels)) {}

  bool finite_ = true;
  std::vector<std::string> labels_;
};

/// Probability vector over a finite space, or the uniform law on [0,1].
class Distribution {
 public:
  static Distribution finite(std::vector<double> masses);
  static Distribution uniform_unit();

  bool is_finite() const noexcept { return finite_; }
  const std::vector<double>& masses() const noexcept { return masses_; }
  std::size_t size() const noexcept { return masses_.size(); }

  State draw(Engine& engine) const;

 private:
  Distribution(bool finite, std::vector<double> masses)
      : finite_(finite), masses_(std::move(masses)) {}

  bool finite_ = true;
  std::vector<double> masses_;
};

struct IidProcess {
  Distribution marginal;
};

struct MarkovProcess {
  TransitionMatrix transition;
  Distribution initial;
};

struct ChainStructure {
  bool irreducible = false;
  std::size_t period = 0;  // 0 when reducible
  std::vector<std::size_t> unreachable;  // states not reachable from state 0
};

/// Strong connectivity and period (gcd of cycle lengths) of the transition graph.
ChainStructure analyze_chain(const TransitionMatrix& p);

/// Description of the node-state processes (V_{i,t})_t, identical and
/// independent across nodes.
class StateProcess {
 public:
  const StateSpace& space() const noexcept { return space_; }
  bool is_iid() const noexcept { return std::holds_alternative<IidProcess>(kind_); }
  const std::variant<IidProcess, MarkovProcess>& kind() const noexcept { return kind_; }

  /// Initial law equals the law at every later time.
  bool stationary() const noexcept { return stationary_; }
  /// i.i.d. processes, and finite Markov chains that are irreducible and aperiodic.
  bool weakly_mixing() const noexcept { return weakly_mixing_; }

  /// Law of V_{i,0}.
  const Distribution& initial() const noexcept;
  /// Long-run marginal: the i.i.d. marginal or the chain's stationary law.
  /// Throws InvalidInput for reducible chains.
  Distribution limit_marginal() const;

 private:
  friend StateProcess make_iid(StateSpace space, Distribution marginal);
  friend StateProcess make_markov(StateSpace space, TransitionMatrix transition,
                                  Distribution initial);

  StateProcess(StateSpace space, std::variant<IidProcess, MarkovProcess> kind,
               bool stationary, bool weakly_mixing)
      : space_(std::move(space)),
        kind_(std::move(kind)),
        stationary_(stationary),
        weakly_mixing_(weakly_mixing) {}

  StateSpace space_;
  std::variant<IidProcess, MarkovProcess> kind_;
  bool stationary_ = false;
  bool weakly_mixing_ = false;
};

StateProcess make_iid(StateSpace space, Distribution marginal);
/// Stationary iff initial * P = initial within kFloatTolerance; weakly mixing
/// iff the chain is irreducible and aperiodic.
StateProcess make_markov(StateSpace space, TransitionMatrix transition, Distribution initial);

/// Solves pi P = pi, sum pi = 1. Throws InvalidInput naming the unreachable
/// states when the chain is reducible.
Distribution stationary_dist(const TransitionMatrix& p);

/// n_nodes x steps realization of the node-state processes.
class StateTrajectory {
 public:
  StateTrajectory(std::size_t n_nodes, std::size_t steps, Seed seed,
                  std::vector<State> states);

  std::size_t n_nodes() const noexcept { return n_nodes_; }
  std::size_t steps() const noexcept { return steps_; }
  Seed seed() const noexcept { return seed_; }

  /// node is 0-based here; graph vertices are node + 1.
  const State& at(std::size_t node, std::size_t t) const {
    return states_[node * steps_ + t];
  }
  /// States of every node at time t.
  std::vector<State> slice(std::size_t t) const;
  /// Path of one node over time.
  std::vector<State> path(std::size_t node) const;

  friend bool operator==(const StateTrajectory&, const StateTrajectory&) = default;

 private:
  std::size_t n_nodes_;
  std::size_t steps_;
  Seed seed_;
  std::vector<State> states_;  // node-major
};

/// Node i draws its path from derive_seed(seed, "node", {i}); paths are
/// independent across nodes and assembly is in node order.
StateTrajectory sample_states(const StateProcess& process, std::size_t n_nodes,
                              std::size_t steps, Seed seed);

}  // namespace graphon_dyn
