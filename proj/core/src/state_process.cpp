#include "graphon_dyn/state_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "graphon_dyn/error.hpp"
#include "graphon_dyn/parallel.hpp"

namespace graphon_dyn {

namespace {

std::size_t draw_index(const std::vector<double>& masses, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] <= 0.0) continue;
    last_positive = i;
    cumulative += masses[i];
    if (u < cumulative) return i;
  }
  return last_positive;  // u landed in the rounding slack above the total
}

std::vector<bool> reachable_from(const TransitionMatrix& p, std::size_t start, bool reverse) {
  const std::size_t m = p.size();
  std::vector<bool> seen(m, false);
  std::queue<std::size_t> q;
  q.push(start);
  seen[start] = true;
  while (!q.empty()) {
    const std::size_t i = q.front();
    q.pop();
    for (std::size_t j = 0; j < m; ++j) {
      const double w = reverse ? p(j, i) : p(i, j);
      if (w > 0.0 && !seen[j]) {
        seen[j] = true;
        q.push(j);
      }
    }
  }
  return seen;
}

void check_distribution_on(const StateSpace& space, const Distribution& dist, const char* what) {
  if (space.is_finite() != dist.is_finite()) {
    throw InvalidInput(std::string(what) + " does not match the state space kind");
  }
  if (space.is_finite() && dist.size() != space.size()) {
    throw InvalidInput(std::string(what) + " has " + std::to_string(dist.size()) +
                       " entries but the state space has " + std::to_string(space.size()) +
                       " states");
  }
}

}  // namespace

StateSpace StateSpace::finite(std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidInput("finite state space needs at least one state");
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw InvalidInput("state labels must be distinct");
  return StateSpace(true, std::move(labels));
}

StateSpace StateSpace::finite(std::size_t m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back("s" + std::to_string(i));
  return finite(std::move(labels));
}

StateSpace StateSpace::unit_interval() { return StateSpace(false, {}); }

std::size_t StateSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidInput("unknown state label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool StateSpace::contains(const State& s) const {
  if (finite_) {
    const auto* i = std::get_if<std::size_t>(&s);
    return i != nullptr && *i < labels_.size();
  }
  const auto* x = std::get_if<double>(&s);
  return x != nullptr && *x >= 0.0 && *x <= 1.0;
}

Distribution Distribution::finite(std::vector<double> masses) {
  if (masses.empty()) throw InvalidInput("distribution needs at least one state");
  double total = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] >= 0.0) || !std::isfinite(masses[i]))
      throw InvalidInput("probability " + std::to_string(i + 1) + " must be non-negative");
    total += masses[i];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidInput("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  return Distribution(true, std::move(masses));
}

Distribution Distribution::uniform_unit() { return Distribution(false, {}); }

State Distribution::draw(Engine& engine) const {
  const double u = uniform01(engine);
  if (!finite_) return u;
  return draw_index(masses_, u);
}

ChainStructure analyze_chain(const TransitionMatrix& p) {
  const std::size_t m = p.size();
  ChainStructure out;
  const auto forward = reachable_from(p, 0, false);
  const auto backward = reachable_from(p, 0, true);
  for (std::size_t i = 0; i < m; ++i) {
    if (!forward[i]) out.unreachable.push_back(i);
  }
  out.irreducible = out.unreachable.empty() &&
                    std::all_of(backward.begin(), backward.end(), [](bool b) { return b; });
  if (!out.irreducible) return out;

  // BFS levels; the period is the gcd of level[i] + 1 - level[j] over edges.
  std::vector<long> level(m, -1);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const std::size_t i = q.front();
    q.pop();
    for (std::size_t j = 0; j < m; ++j) {
      if (p(i, j) > 0.0 && level[j] < 0) {
        level[j] = level[i] + 1;
        q.push(j);
      }
    }
  }
  long period = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (p(i, j) > 0.0) period = std::gcd(period, std::abs(level[i] + 1 - level[j]));
  out.period = static_cast<std::size_t>(period);
  return out;
}

Distribution stationary_dist(const TransitionMatrix& p) {
  const ChainStructure structure = analyze_chain(p);
  if (!structure.irreducible) {
    std::string msg = "stationary distribution needs an irreducible chain";
    if (!structure.unreachable.empty()) {
      msg += "; states unreachable from state 1:";
      for (std::size_t i : structure.unreachable) msg += " " + std::to_string(i + 1);
    } else {
      msg += "; state 1 is not reachable from every state";
    }
    throw InvalidInput(msg);
  }

  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  const auto m = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      a(i, j) = p(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) - (i == j ? 1.0 : 0.0);
  a.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd pi = lu.solve(rhs);
  // one step of iterative refinement
  pi += lu.solve(rhs - a * pi);

  std::vector<double> masses(p.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    masses[static_cast<std::size_t>(i)] = std::max(0.0, pi(i));
    total += masses[static_cast<std::size_t>(i)];
  }
  for (double& x : masses) x /= total;
  return Distribution::finite(std::move(masses));
}

const Distribution& StateProcess::initial() const noexcept {
  if (const auto* iid = std::get_if<IidProcess>(&kind_)) return iid->marginal;
  return std::get<MarkovProcess>(kind_).initial;
}

Distribution StateProcess::limit_marginal() const {
  if (const auto* iid = std::get_if<IidProcess>(&kind_)) return iid->marginal;
  return stationary_dist(std::get<MarkovProcess>(kind_).transition);
}

StateProcess make_iid(StateSpace space, Distribution marginal) {
  check_distribution_on(space, marginal, "marginal");
  return StateProcess(std::move(space), IidProcess{std::move(marginal)}, true, true);
}

StateProcess make_markov(StateSpace space, TransitionMatrix transition, Distribution initial) {
  if (!space.is_finite()) throw InvalidInput("Markov state processes need a finite state space");
  if (transition.size() != space.size()) {
    throw InvalidInput("transition matrix is " + std::to_string(transition.size()) + "x" +
                       std::to_string(transition.size()) + " but the state space has " +
                       std::to_string(space.size()) + " states");
  }
  check_distribution_on(space, initial, "initial distribution");

  const std::size_t m = transition.size();
  bool stationary = true;
  for (std::size_t j = 0; j < m && stationary; ++j) {
    double next = 0.0;
    for (std::size_t i = 0; i < m; ++i) next += initial.masses()[i] * transition(i, j);
    stationary = std::abs(next - initial.masses()[j]) <= kFloatTolerance;
  }
  const ChainStructure structure = analyze_chain(transition);
  const bool mixing = structure.irreducible && structure.period == 1;
  return StateProcess(std::move(space), MarkovProcess{std::move(transition), std::move(initial)},
                      stationary, mixing);
}

StateTrajectory::StateTrajectory(std::size_t n_nodes, std::size_t steps, Seed seed,
                                 std::vector<State> states)
    : n_nodes_(n_nodes), steps_(steps), seed_(seed), states_(std::move(states)) {
  if (states_.size() != n_nodes_ * steps_) {
    throw InvalidInput("state trajectory storage does not match n_nodes x steps");
  }
}

std::vector<State> StateTrajectory::slice(std::size_t t) const {
  std::vector<State> out;
  out.reserve(n_nodes_);
  for (std::size_t i = 0; i < n_nodes_; ++i) out.push_back(at(i, t));
  return out;
}

std::vector<State> StateTrajectory::path(std::size_t node) const {
  const auto begin = states_.begin() + static_cast<std::ptrdiff_t>(node * steps_);
  return {begin, begin + static_cast<std::ptrdiff_t>(steps_)};
}

StateTrajectory sample_states(const StateProcess& process, std::size_t n_nodes,
                              std::size_t steps, Seed seed) {
  if (n_nodes == 0 || steps == 0) throw InvalidInput("need at least one node and one step");
  std::vector<State> states(n_nodes * steps);

  parallel_for(n_nodes, [&](std::size_t node) {
    Engine engine = make_engine(derive_seed(seed, "node", {node}));
    State* out = states.data() + node * steps;
    if (const auto* iid = std::get_if<IidProcess>(&process.kind())) {
      for (std::size_t t = 0; t < steps; ++t) out[t] = iid->marginal.draw(engine);
      return;
    }
    const auto& markov = std::get<MarkovProcess>(process.kind());
    const Matrix& p = markov.transition.matrix();
    const std::size_t m = p.size();
    std::vector<double> row(m);
    std::size_t current = std::get<std::size_t>(markov.initial.draw(engine));
    out[0] = current;
    for (std::size_t t = 1; t < steps; ++t) {
      for (std::size_t j = 0; j < m; ++j) row[j] = p(current, j);
      current = draw_index(row, uniform01(engine));
      out[t] = current;
    }
  });
  return StateTrajectory(n_nodes, steps, seed, std::move(states));
}

}  // namespace graphon_dyn
