#include "graphon_dyn/ergodics.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "graphon_dyn/error.hpp"

namespace graphon_dyn {

StateTrajectory shift(const StateTrajectory& traj, std::size_t steps) {
  if (steps >= traj.steps()) {
    throw InvalidInput("cannot shift by " + std::to_string(steps) + " a trajectory of " +
                       std::to_string(traj.steps()) + " steps");
  }
  const std::size_t remaining = traj.steps() - steps;
  std::vector<State> states;
  states.reserve(traj.n_nodes() * remaining);
  for (std::size_t i = 0; i < traj.n_nodes(); ++i)
    for (std::size_t t = steps; t < traj.steps(); ++t) states.push_back(traj.at(i, t));
  return StateTrajectory(traj.n_nodes(), remaining, traj.seed(), std::move(states));
}

std::size_t RecurrenceReport::count_before(std::size_t t) const {
  return static_cast<std::size_t>(
      std::lower_bound(return_times.begin(), return_times.end(), t) - return_times.begin());
}

RecurrenceReport recurrence_count(const GraphTrajectory& traj, const SimpleGraph& pattern,
                                  std::span<const Vertex> watched_nodes, MatchMode mode) {
  if (static_cast<std::size_t>(pattern.order()) != watched_nodes.size()) {
    throw InvalidInput("pattern has " + std::to_string(pattern.order()) + " vertices but " +
                       std::to_string(watched_nodes.size()) + " nodes are watched");
  }
  if (pattern.order() > kMaxIsomorphismOrder) {
    throw UnsupportedSize("recurrence patterns support at most " +
                          std::to_string(kMaxIsomorphismOrder) + " vertices");
  }
  if (std::set<Vertex>(watched_nodes.begin(), watched_nodes.end()).size() != watched_nodes.size()) {
    throw InvalidInput("watched nodes must be distinct");
  }

  RecurrenceReport report{pattern, {watched_nodes.begin(), watched_nodes.end()}, {},
                          traj.steps(), !traj.process_stationary};
  for (std::size_t t = 0; t < traj.steps(); ++t) {
    const SimpleGraph sub = induced_subgraph(traj.snapshots[t], watched_nodes);
    const bool matched = mode == MatchMode::labeled ? sub == pattern : is_isomorphic(sub, pattern);
    if (matched) report.return_times.push_back(t);
  }
  return report;
}

BirkhoffSeries birkhoff_average(const StateProcess& process, const EdgeKernel& k,
                                const SimpleGraph& pattern, std::size_t n_steps, Seed seed) {
  if (n_steps == 0) throw InvalidInput("Birkhoff average needs at least one step");
  if (pattern.order() > kMaxIsomorphismOrder) {
    throw UnsupportedSize("Birkhoff patterns support at most " +
                          std::to_string(kMaxIsomorphismOrder) + " vertices");
  }
  k.check_compatible(process.space());

  BirkhoffSeries series;
  series.horizon = n_steps;
  series.hypothesis_unmet = !process.weakly_mixing();

  Distribution limit = process.initial();
  try {
    limit = process.limit_marginal();
  } catch (const InvalidInput&) {
    // reducible chain: no unique limit law, fall back to the initial law
    series.hypothesis_unmet = true;
  }
  series.target = marginal_prob(pattern, limit, k);

  const auto width = static_cast<std::size_t>(pattern.order());
  const StateTrajectory paths = sample_states(process, width, n_steps, seed);
  series.partial_averages.reserve(n_steps);
  std::vector<State> current(width);
  double running = 0.0;
  for (std::size_t t = 0; t < n_steps; ++t) {
    for (std::size_t i = 0; i < width; ++i) current[i] = paths.at(i, t);
    running += conditional_prob(pattern, current, k);
    series.partial_averages.push_back(running / static_cast<double>(t + 1));
  }
  return series;
}

}  // namespace graphon_dyn
