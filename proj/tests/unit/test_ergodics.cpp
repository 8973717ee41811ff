#include <cmath>

#include "doctest.h"
#include "graphon_dyn/ergodics.hpp"
#include "graphon_dyn/error.hpp"

using namespace graphon_dyn;

namespace {

const EdgeKernel kDiag = EdgeKernel::block({{1, 0}, {0, 1}});

StateProcess coin() { return make_iid(StateSpace::finite(2), Distribution::finite({0.5, 0.5})); }

StateProcess lazy(std::vector<double> init) {
  return make_markov(StateSpace::finite(2), TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                     Distribution::finite(std::move(init)));
}

}  // namespace

TEST_CASE("shift") {
  const auto x = sample_states(lazy({0.5, 0.5}), 4, 10, 1);
  CHECK(shift(x, 0) == x);
  CHECK(shift(shift(x, 1), 1) == shift(x, 2));
  const auto y = shift(x, 3);
  CHECK(y.steps() == 7);
  CHECK(y.n_nodes() == 4);
  CHECK(y.at(2, 0) == x.at(2, 3));
  CHECK_THROWS_AS(shift(x, 10), InvalidInput);

  const auto frozen = sample_states(make_iid(StateSpace::finite(2), Distribution::finite({0, 1})), 3, 6, 2);
  const auto z = shift(frozen, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t t = 0; t < z.steps(); ++t) CHECK(z.at(i, t) == frozen.at(i, 0));
}

TEST_CASE("shift keeps stationary marginals") {
  const auto x = sample_states(lazy({0.5, 0.5}), 20000, 12, 3);
  const auto y = shift(x, 7);
  auto ones = [](const StateTrajectory& s) {
    double c = 0.0;
    for (std::size_t i = 0; i < s.n_nodes(); ++i) c += static_cast<double>(std::get<std::size_t>(s.at(i, 0)));
    return c / static_cast<double>(s.n_nodes());
  };
  CHECK(std::abs(ones(x) - ones(y)) <= 3.0 * std::sqrt(2.0 * 0.25 / 20000.0));
}

TEST_CASE("recurrence examples") {
  const std::vector<Vertex> watched{2, 4, 5};
  const auto full = simulate_trajectory(coin(), EdgeKernel::constant(1), 6, 30, 5);
  const auto r = recurrence_count(full, complete_graph(3), watched);
  CHECK(r.return_times.size() == 30);
  CHECK(r.horizon == 30);
  CHECK_FALSE(r.hypothesis_unmet);

  const auto none = simulate_trajectory(coin(), EdgeKernel::constant(0), 6, 30, 5);
  CHECK(recurrence_count(none, path_graph(3), watched).return_times.empty());

  const std::vector<Vertex> pair{1, 2};
  const auto traj = simulate_trajectory(coin(), kDiag, 4, 1000, 7);
  const auto rep = recurrence_count(traj, complete_graph(2), pair);
  CHECK(std::abs(static_cast<double>(rep.return_times.size()) - 500.0) <= 47.0);
  for (std::size_t i = 1; i < rep.return_times.size(); ++i) CHECK(rep.return_times[i - 1] < rep.return_times[i]);
  CHECK(rep.count_before(1000) == rep.return_times.size());
  CHECK(rep.count_before(0) == 0);

  CHECK_THROWS_AS(recurrence_count(traj, complete_graph(3), pair), InvalidInput);
  const std::vector<Vertex> repeated{1, 1};
  CHECK_THROWS_AS(recurrence_count(traj, complete_graph(2), repeated), InvalidInput);
}

TEST_CASE("isomorphic and labeled matching") {
  // node 1 connects to everything, nobody else is connected
  const auto traj = simulate_trajectory(make_iid(StateSpace::finite(2), Distribution::finite({1, 0})),
                                        EdgeKernel::constant(1), 3, 4, 11);
  const std::vector<Vertex> watched{1, 2, 3};
  const auto star_center_two = star_graph(3, 2);
  CHECK(recurrence_count(traj, star_center_two, watched, MatchMode::isomorphic).return_times.empty());
  CHECK(recurrence_count(traj, complete_graph(3), watched, MatchMode::labeled).return_times.size() == 4);

  GraphTrajectory star = traj;
  for (auto& g : star.snapshots) g = star_graph(3, 1);
  CHECK(recurrence_count(star, star_center_two, watched, MatchMode::isomorphic).return_times.size() == 4);
  CHECK(recurrence_count(star, star_center_two, watched, MatchMode::labeled).return_times.empty());
}

TEST_CASE("recurrence flags non-stationary processes") {
  const auto traj = simulate_trajectory(lazy({1, 0}), kDiag, 3, 50, 13);
  const std::vector<Vertex> pair{1, 2};
  const auto r = recurrence_count(traj, complete_graph(2), pair);
  CHECK(r.hypothesis_unmet);
  CHECK_FALSE(r.return_times.empty());
}

TEST_CASE("Birkhoff averages") {
  const auto iid = birkhoff_average(coin(), kDiag, complete_graph(2), 10000, 17);
  CHECK(iid.target == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(iid.partial_averages.size() == 10000);
  CHECK_FALSE(iid.hypothesis_unmet);
  CHECK(std::abs(iid.partial_averages.back() - iid.target) <= 4.0 * 0.5 / std::sqrt(10000.0));
  for (double a : iid.partial_averages) CHECK((a >= 0.0 && a <= 1.0));

  const std::size_t n = 100000;
  const auto warm = birkhoff_average(lazy({0.5, 0.5}), kDiag, complete_graph(2), n, 19);
  const auto cold = birkhoff_average(lazy({1, 0}), kDiag, complete_graph(2), n, 19);
  CHECK(warm.target == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cold.target == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(warm.partial_averages.back() - 0.5) <= 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(cold.partial_averages.back() - 0.5) <= 5.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(warm.partial_averages.back() - cold.partial_averages.back()) <=
        10.0 / std::sqrt(static_cast<double>(n)));

  CHECK(birkhoff_average(coin(), kDiag, complete_graph(2), 500, 23).partial_averages ==
        birkhoff_average(coin(), kDiag, complete_graph(2), 500, 23).partial_averages);
}

TEST_CASE("Birkhoff flags processes that are not weakly mixing") {
  const auto flip = make_markov(StateSpace::finite(2), TransitionMatrix::make({{0, 1}, {1, 0}}),
                                Distribution::finite({0.5, 0.5}));
  CHECK(birkhoff_average(flip, kDiag, complete_graph(2), 100, 1).hypothesis_unmet);

  const auto frozen = make_markov(StateSpace::finite(2), TransitionMatrix::identity(2), Distribution::finite({0.5, 0.5}));
  const auto s = birkhoff_average(frozen, kDiag, complete_graph(2), 100, 1);
  CHECK(s.hypothesis_unmet);
  CHECK(s.target == doctest::Approx(0.5));
  CHECK_THROWS_AS(birkhoff_average(coin(), kDiag, complete_graph(2), 0, 1), InvalidInput);
  CHECK_THROWS_AS(birkhoff_average(coin(), kDiag, empty_graph(9), 10, 1), UnsupportedSize);
}
