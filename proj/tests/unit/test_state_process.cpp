#include <cmath>

#include "doctest.h"
#include "graphon_dyn/error.hpp"
#include "graphon_dyn/state_process.hpp"

using namespace graphon_dyn;

namespace {

std::size_t index(const State& s) { return std::get<std::size_t>(s); }

double fraction_in(const StateTrajectory& x, std::size_t t, std::size_t state) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.n_nodes(); ++i) hits += index(x.at(i, t)) == state;
  return static_cast<double>(hits) / static_cast<double>(x.n_nodes());
}

}  // namespace

TEST_CASE("state spaces and distributions") {
  const auto space = StateSpace::finite({"a", "b", "c"});
  CHECK(space.size() == 3);
  CHECK(space.index_of("c") == 2);
  CHECK_THROWS_AS(space.index_of("d"), InvalidInput);
  CHECK(space.contains(State{std::size_t{2}}));
  CHECK_FALSE(space.contains(State{std::size_t{3}}));
  CHECK_FALSE(space.contains(State{0.5}));
  CHECK(StateSpace::finite(2).labels() == std::vector<std::string>{"s0", "s1"});
  CHECK_THROWS_AS(StateSpace::finite({"a", "a"}), InvalidInput);
  CHECK_THROWS_AS(StateSpace::finite(std::size_t{0}), InvalidInput);
  CHECK(StateSpace::unit_interval().contains(State{1.0}));

  CHECK_THROWS_AS(Distribution::finite({0.5, 0.4}), InvalidInput);
  CHECK_THROWS_AS(Distribution::finite({1.5, -0.5}), InvalidInput);
  CHECK_NOTHROW(Distribution::finite({0.5, 0.5}));
}

TEST_CASE("make_iid") {
  const auto coin = make_iid(StateSpace::finite(2), Distribution::finite({0.5, 0.5}));
  CHECK(coin.is_iid());
  CHECK(coin.stationary());
  CHECK(coin.weakly_mixing());

  const auto unif = make_iid(StateSpace::unit_interval(), Distribution::uniform_unit());
  CHECK(unif.stationary());
  const auto x = sample_states(unif, 50, 4, 1);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t t = 0; t < 4; ++t) {
      const double u = std::get<double>(x.at(i, t));
      CHECK((u >= 0.0 && u < 1.0));
    }

  const auto constant = make_iid(StateSpace::finite({"a", "b", "c"}), Distribution::finite({1, 0, 0}));
  const auto c = sample_states(constant, 20, 5, 2);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t t = 0; t < 5; ++t) CHECK(index(c.at(i, t)) == 0);

  CHECK_THROWS_AS(make_iid(StateSpace::finite(3), Distribution::finite({0.5, 0.5})), InvalidInput);
  CHECK_THROWS_AS(make_iid(StateSpace::finite(2), Distribution::uniform_unit()), InvalidInput);
}

TEST_CASE("make_markov flags") {
  const auto space = StateSpace::finite(2);
  const auto lazy = make_markov(space, TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                                Distribution::finite({0.5, 0.5}));
  CHECK(lazy.stationary());
  CHECK(lazy.weakly_mixing());

  const auto frozen = make_markov(space, TransitionMatrix::identity(2), Distribution::finite({0.3, 0.7}));
  CHECK_FALSE(frozen.weakly_mixing());
  CHECK_THROWS_AS(frozen.limit_marginal(), InvalidInput);

  const auto flip = make_markov(space, TransitionMatrix::make({{0, 1}, {1, 0}}), Distribution::finite({0.5, 0.5}));
  CHECK(flip.stationary());
  CHECK_FALSE(flip.weakly_mixing());

  const auto cold = make_markov(space, TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                                Distribution::finite({1, 0}));
  CHECK_FALSE(cold.stationary());
  CHECK(cold.weakly_mixing());
  CHECK(cold.limit_marginal().masses()[0] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(make_markov(StateSpace::finite(3), TransitionMatrix::identity(2), Distribution::finite({1, 0})),
                  InvalidInput);
  CHECK_THROWS_AS(make_markov(StateSpace::unit_interval(), TransitionMatrix::identity(2),
                              Distribution::finite({1, 0})),
                  InvalidInput);
}

TEST_CASE("chain structure") {
  const auto three_cycle = analyze_chain(TransitionMatrix::make({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  CHECK(three_cycle.irreducible);
  CHECK(three_cycle.period == 3);

  const auto mixed = analyze_chain(TransitionMatrix::make({{0, 1, 0}, {0, 0, 1}, {0.5, 0.5, 0}}));
  CHECK(mixed.irreducible);
  CHECK(mixed.period == 1);

  const auto leaky = analyze_chain(TransitionMatrix::make({{1, 0, 0}, {0.5, 0.5, 0}, {0, 0, 1}}));
  CHECK_FALSE(leaky.irreducible);
  CHECK(leaky.unreachable == std::vector<std::size_t>{1, 2});
}

TEST_CASE("stationary distributions") {
  const auto sym = stationary_dist(TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}));
  CHECK(std::abs(sym.masses()[0] - 0.5) <= 1e-12);
  CHECK(std::abs(sym.masses()[1] - 0.5) <= 1e-12);

  CHECK(stationary_dist(TransitionMatrix::identity(1)).masses() == std::vector<double>{1.0});

  const auto p = TransitionMatrix::make({{0.5, 0.5}, {0.25, 0.75}});
  const auto pi = stationary_dist(p);
  CHECK(std::abs(pi.masses()[0] - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(pi.masses()[1] - 2.0 / 3.0) <= 1e-12);

  const auto q = TransitionMatrix::make({{0.1, 0.6, 0.3}, {0.4, 0.4, 0.2}, {0.5, 0.25, 0.25}});
  const auto mu = stationary_dist(q);
  for (std::size_t b = 0; b < 3; ++b) {
    double next = 0.0;
    for (std::size_t a = 0; a < 3; ++a) next += mu.masses()[a] * q(a, b);
    CHECK(std::abs(next - mu.masses()[b]) < 1e-12);
  }

  CHECK_THROWS_WITH_AS(stationary_dist(TransitionMatrix::make({{1, 0, 0}, {0.5, 0.5, 0}, {0, 0, 1}})),
                       doctest::Contains("unreachable from state 1: 2 3"), InvalidInput);
}

TEST_CASE("sample_states is reproducible and seed sensitive") {
  const auto p = make_markov(StateSpace::finite(3),
                             TransitionMatrix::make({{0.1, 0.6, 0.3}, {0.4, 0.4, 0.2}, {0.5, 0.25, 0.25}}),
                             Distribution::finite({0.2, 0.3, 0.5}));
  const auto a = sample_states(p, 30, 40, 99);
  CHECK(a == sample_states(p, 30, 40, 99));
  CHECK_FALSE(a == sample_states(p, 30, 40, 100));
  CHECK(a.slice(3).size() == 30);
  CHECK(a.path(4).size() == 40);
  CHECK(a.path(4)[7] == a.at(4, 7));
  // a node's path does not depend on how many other nodes are sampled
  const auto b = sample_states(p, 10, 40, 99);
  for (std::size_t i = 0; i < 10; ++i) CHECK(a.path(i) == b.path(i));
}

TEST_CASE("sample_states examples") {
  const auto coin = make_iid(StateSpace::finite(2), Distribution::finite({0.5, 0.5}));
  const auto x = sample_states(coin, 10000, 1, 3);
  CHECK(std::abs(fraction_in(x, 0, 1) - 0.5) <= 0.015);

  const auto frozen = make_markov(StateSpace::finite(2), TransitionMatrix::identity(2), Distribution::finite({1, 0}));
  const auto f = sample_states(frozen, 5, 50, 4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t t = 0; t < 50; ++t) CHECK(index(f.at(i, t)) == 0);

  const auto lazy = make_markov(StateSpace::finite(2), TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                                Distribution::finite({1, 0}));
  const auto path = sample_states(lazy, 1, 1000, 5).path(0);
  std::size_t ones = 0;
  for (const auto& s : path) ones += index(s) == 1;
  CHECK(std::abs(static_cast<double>(ones) / 1000.0 - 0.5) <= 0.05);
}

TEST_CASE("node paths are uncorrelated and identically distributed") {
  const auto lazy = make_markov(StateSpace::finite(2), TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                                Distribution::finite({0.5, 0.5}));
  const std::size_t steps = 20000;
  const auto x = sample_states(lazy, 2, steps, 6);
  double m0 = 0, m1 = 0, s00 = 0, s11 = 0, s01 = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const double a = static_cast<double>(index(x.at(0, t)));
    const double b = static_cast<double>(index(x.at(1, t)));
    m0 += a, m1 += b, s00 += a * a, s11 += b * b, s01 += a * b;
  }
  const double n = static_cast<double>(steps);
  const double cov = s01 / n - (m0 / n) * (m1 / n);
  const double rho = cov / std::sqrt((s00 / n - (m0 / n) * (m0 / n)) * (s11 / n - (m1 / n) * (m1 / n)));
  CHECK(std::abs(rho) < 4.0 / std::sqrt(n));

  // stationary chain: marginal at t=0 and at t=T-1 within 3 binomial sigma of each other
  const auto wide = sample_states(lazy, 20000, 30, 7);
  const double band = 3.0 * std::sqrt(2.0 * 0.25 / 20000.0);
  CHECK(std::abs(fraction_in(wide, 0, 1) - fraction_in(wide, 29, 1)) <= band);

  // per-node marginals agree under node relabeling
  const auto coin = make_iid(StateSpace::finite(2), Distribution::finite({0.3, 0.7}));
  const auto y = sample_states(coin, 3, 20000, 8);
  std::vector<double> freq(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t t = 0; t < 20000; ++t) freq[i] += static_cast<double>(index(y.at(i, t)));
    freq[i] /= 20000.0;
  }
  const double sigma = std::sqrt(2.0 * 0.21 / 20000.0);
  CHECK(std::abs(freq[0] - freq[1]) <= 3.0 * sigma);
  CHECK(std::abs(freq[1] - freq[2]) <= 3.0 * sigma);
}
