// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graphon_dyn/dynamics.hpp"
#include "graphon_dyn/edge_kernel.hpp"
#include "graphon_dyn/ergodics.hpp"
#include "graphon_dyn/graphon.hpp"
#include "graphon_dyn/homomorphism.hpp"
#include "oracles.hpp"

using namespace graphon_dyn;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

struct Moments {
  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;

  void add(double x) { sum += x, sum_sq += x * x, ++n; }
  double mean() const { return sum / static_cast<double>(n); }
  double std_error() const {
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
};

Matrix random_symmetric(std::mt19937_64& rng, std::size_t k, double lo, double hi) {
  std::uniform_real_distribution<double> unit(lo, hi);
  Matrix m(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) m(a, b) = m(b, a) = unit(rng);
  return m;
}

std::vector<double> random_masses(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) total += (x = unit(rng));
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) head += (p[i] /= total);
  p[k - 1] = 1.0 - head;
  return p;
}

double pairs(std::size_t n) { return static_cast<double>(n) * static_cast<double>(n - 1) / 2.0; }

StateProcess coin(std::vector<double> masses) {
  const std::size_t m = masses.size();
  return make_iid(StateSpace::finite(m), Distribution::finite(std::move(masses)));
}

// 1
Outcome worked_example() {
  const auto f = make_graph(3, {{1, 2}, {1, 3}});
  const auto g = make_graph(4, {{1, 2}, {1, 3}});
  const auto t = hom_density_graphs(f, g);
  const double step = hom_density_step(f, graphon_from_graph(g));
  const bool ok = t.numerator == 6 && t.denominator == 64 && std::abs(step - 0.09375) <= 1e-12;
  return {ok, "t(F,G) = " + t.to_string() + ", step form " + fmt("%.17g (want 0.09375 within 1e-12)", step)};
}

// 2
Outcome smoothing_invariance() {
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % 6;
    const auto w = StepGraphon::equal_blocks(random_symmetric(rng, k, 0.0, 1.0));
    Matrix positive(k);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) positive(a, b) = unit(rng);
    const auto p = sinkhorn_normalize(positive);
    worst = std::max(worst, std::abs(edge_density(kernel_smooth(w, p)) - edge_density(w)));
  }
  return {worst <= 1e-10, fmt("max |t(edge,P^T W P) - t(edge,W)| = %.3g over 200 pairs (limit 1e-10)", worst)};
}

// 3
Outcome erdos_renyi() {
  const std::size_t n = 100, samples = 200;
  const auto traj = simulate_trajectory(coin({1.0}), EdgeKernel::constant(0.3), n, samples, 3);
  Moments edges, triangles;
  const double injective = static_cast<double>(n * (n - 1) * (n - 2));
  for (const auto& g : traj.snapshots) {
    edges.add(static_cast<double>(g.size()));
    // every homomorphism of a triangle into a simple graph is injective
    triangles.add(static_cast<double>(hom_count(complete_graph(3), g).count) / injective);
  }
  const double expected_edges = 0.3 * pairs(n);
  const double edge_sigma = std::sqrt(pairs(n) * 0.3 * 0.7 / static_cast<double>(samples));
  const double tri_gap = std::abs(triangles.mean() - 0.027);
  const bool ok = std::abs(edges.mean() - expected_edges) <= 3.0 * edge_sigma && tri_gap <= 4.0 * triangles.std_error();
  return {ok, fmt("mean edges %.2f vs 1485 +- %.2f; triangle density %.5f vs 0.027 +- %.5f", edges.mean(),
                  3.0 * edge_sigma, triangles.mean(), 4.0 * triangles.std_error())};
}

// 4
Outcome block_model() {
  const std::size_t n = 200, samples = 100;
  const auto k = EdgeKernel::block({{0.8, 0.2}, {0.2, 0.8}});
  const double exact = marginal_prob(complete_graph(2), Distribution::finite({0.5, 0.5}), k);
  const auto traj = simulate_trajectory(coin({0.5, 0.5}), k, n, samples, 4);
  Moments density;
  for (const auto& g : traj.snapshots) density.add(static_cast<double>(g.size()) / pairs(n));
  const bool ok = std::abs(density.mean() - exact) <= 4.0 * density.std_error();
  return {ok, fmt("edge density %.5f vs exact %.5f +- %.5f", density.mean(), exact, 4.0 * density.std_error())};
}

double total_variation(const std::map<std::uint64_t, double>& p, const std::map<std::uint64_t, double>& q) {
  double tv = 0.0;
  for (const auto& a : all_labeled_graphs(3)) {
    const auto code = labeled_code(a);
    const double pa = p.count(code) ? p.at(code) : 0.0;
    const double qa = q.count(code) ? q.at(code) : 0.0;
    tv += std::abs(pa - qa);
  }
  return tv / 2.0;
}

// 5
Outcome permutation_invariance() {
  const std::size_t samples = 100000;
  const auto cycle = VertexPermutation::make({2, 3, 1});
  const double weight = 1.0 / static_cast<double>(samples);

  const auto k = EdgeKernel::block({{0.9, 0.1}, {0.1, 0.5}});
  const auto traj = simulate_trajectory(coin({0.3, 0.7}), k, 3, samples, 5);
  std::map<std::uint64_t, double> plain, permuted;
  for (const auto& g : traj.snapshots) {
    plain[labeled_code(g)] += weight;
    permuted[labeled_code(permute(g, cycle))] += weight;
  }
  const double tv_iid = total_variation(plain, permuted);

  // node 1 always in state 0, the others fair coins; only state-0 nodes link
  const auto hub = EdgeKernel::block({{1, 0}, {0, 0}});
  const std::vector<Distribution> per_node{Distribution::finite({1, 0}), Distribution::finite({0.5, 0.5}),
                                           Distribution::finite({0.5, 0.5})};
  Engine engine = make_engine(derive_seed(5, "converse"));
  std::map<std::uint64_t, double> empirical, exact_permuted;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<State> v;
    for (const auto& d : per_node) v.push_back(d.draw(engine));
    empirical[labeled_code(sample_graph(hub, v, derive_seed(5, "converse_edges", {s})))] += weight;
  }
  for (const auto& a : all_labeled_graphs(3)) {
    exact_permuted[labeled_code(a)] = marginal_prob(permute(a, cycle.inverse()), per_node, hub);
  }
  const double tv_het = total_variation(empirical, exact_permuted);
  return {tv_iid < 0.02 && tv_het > 0.05,
          fmt("i.i.d. states TV %.4f (< 0.02); heterogeneous node TV %.4f (> 0.05)", tv_iid, tv_het)};
}

// 6
Outcome snapshot_densities() {
  const std::size_t n = 200, samples = 40;
  std::vector<SimpleGraph> patterns{empty_graph(1), empty_graph(2), complete_graph(2), empty_graph(3),
                                    make_graph(3, {{1, 2}}), path_graph(3), complete_graph(3)};
  struct Model {
    const char* name;
    StateProcess process;
    EdgeKernel kernel;
    Distribution dist;
  };
  const std::vector<Model> models{
      {"ER", coin({1.0}), EdgeKernel::constant(0.3), Distribution::finite({1.0})},
      {"SBM", coin({0.5, 0.5}), EdgeKernel::block({{0.8, 0.2}, {0.2, 0.8}}), Distribution::finite({0.5, 0.5})},
  };
  bool ok = true;
  double worst_ratio = 0.0;
  for (const auto& m : models) {
    const auto w = induced_graphon(m.kernel, m.dist);
    const auto traj = simulate_trajectory(m.process, m.kernel, n, samples, 6);
    for (const auto& f : patterns) {
      Moments t;
      for (const auto& g : traj.snapshots) t.add(hom_density_graphs(f, g).value);
      const double order = static_cast<double>(f.order());
      const double band = 4.0 * t.std_error() + order * order / static_cast<double>(n);
      const double gap = std::abs(t.mean() - hom_density_step(f, w));
      ok = ok && gap <= band;
      worst_ratio = std::max(worst_ratio, gap / band);
    }
  }
  return {ok, fmt("14 pattern/model pairs; worst gap uses %.2f of the 4 sigma + |V(F)|^2/n band", worst_ratio)};
}

// 7
Outcome kernel_mixture() {
  const auto m = KernelMixture::make({{0.5, EdgeKernel::constant(0)}, {0.5, EdgeKernel::constant(1)}});
  const auto states = coin({0.5, 0.5});
  const std::size_t runs = 10000;
  std::size_t empty = 0;
  bool pure = true;
  for (Seed seed = 0; seed < runs; ++seed) {
    const auto traj = simulate_mixture_trajectory(m, states, 4, 3, seed);
    const bool none = traj.snapshots[0].size() == 0;
    for (const auto& g : traj.snapshots) pure = pure && g == (none ? empty_graph(4) : complete_graph(4));
    empty += none;
  }
  const double frac = static_cast<double>(empty) / static_cast<double>(runs);
  const auto dist = Distribution::finite({0.5, 0.5});
  const double t_edge = mixture_density(m, dist, complete_graph(2));
  const double t_tri = mixture_density(m, dist, complete_graph(3));
  const bool ok = pure && std::abs(frac - 0.5) <= 0.015 && t_edge == 0.5 && t_tri == 0.5;
  return {ok, std::string(pure ? "every trajectory all-empty or all-complete" : "mixed trajectory found") +
                  fmt("; empty fraction %.4f (0.5 +- 0.015); t(edge) = %.17g, t(triangle) = %.17g", frac, t_edge,
                      t_tri)};
}

// 8
Outcome recurrence() {
  const auto diag = EdgeKernel::block({{1, 0}, {0, 1}});
  const std::vector<Vertex> watched{1, 2};
  std::size_t in_band = 0, growing = 0;
  const std::size_t runs = 100;
  for (Seed seed = 0; seed < runs; ++seed) {
    const auto traj = simulate_trajectory(coin({0.5, 0.5}), diag, 2, 2000, 800 + seed);
    const auto report = recurrence_count(traj, complete_graph(2), watched);
    const auto c1000 = static_cast<double>(report.count_before(1000));
    const auto c2000 = static_cast<double>(report.count_before(2000));
    in_band += std::abs(c1000 - 500.0) <= 47.0;
    growing += c1000 > 0 && c2000 / c1000 >= 1.5;
  }
  const double a = static_cast<double>(in_band) / runs;
  const double b = static_cast<double>(growing) / runs;
  return {a >= 0.95 && b >= 0.95,
          fmt("count(1000) in 500 +- 47 for %.0f%% of runs; count(2000)/count(1000) >= 1.5 for %.0f%% (need 95%%)",
              100 * a, 100 * b)};
}

// 9
Outcome birkhoff() {
  const auto p = TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}});
  const auto diag = EdgeKernel::block({{1, 0}, {0, 1}});
  const std::size_t n = 100000, runs = 100;
  const double band = 5.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> rates;
  for (const std::vector<double>& init : {std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}}) {
    const auto process = make_markov(StateSpace::finite(2), p, Distribution::finite(init));
    std::size_t hits = 0;
    for (Seed seed = 0; seed < runs; ++seed) {
      const auto s = birkhoff_average(process, diag, complete_graph(2), n, 900 + seed);
      hits += std::abs(s.partial_averages.back() - 0.5) <= band && std::abs(s.target - 0.5) <= 1e-12;
    }
    rates.push_back(static_cast<double>(hits) / runs);
  }
  return {rates[0] >= 0.95 && rates[1] >= 0.95,
          fmt("final average within %.4f of 0.5: %.0f%% from stationary start, %.0f%% from (1,0) (need 95%%)", band,
              100 * rates[0], 100 * rates[1])};
}

// 10
Outcome cut_metrics() {
  std::mt19937_64 rng(1010);
  double worst_norm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % 4;
    const auto u = SignedStepKernel::make(random_masses(rng, k), random_symmetric(rng, k, -1.0, 1.0));
    worst_norm = std::max(worst_norm, std::abs(cut_norm(u).value - oracle::cut_norm(u)));
  }
  double worst_dist = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial) % 4;
    const auto values = random_symmetric(rng, k, 0.0, 1.0);
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix moved(k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) moved(a, b) = values(perm[a], perm[b]);
    const double d = cut_distance(StepGraphon::equal_blocks(values), StepGraphon::equal_blocks(moved)).value;
    worst_dist = std::max(worst_dist, d);
  }
  return {worst_norm <= 1e-12 && worst_dist <= 1e-12,
          fmt("max cut norm deviation from enumeration %.3g over 100 kernels; max cut distance to a block "
              "permutation %.3g (limits 1e-12)",
              worst_norm, worst_dist)};
}

// 11
Outcome normalization() {
  std::mt19937_64 rng(1111);
  const auto graphs = all_labeled_graphs(3);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<State> v;
    std::optional<EdgeKernel> k;
    if (trial % 2 == 0) {
      k = EdgeKernel::block(random_symmetric(rng, 3, 0.0, 1.0));
      for (int i = 0; i < 3; ++i) v.emplace_back(static_cast<std::size_t>(rng() % 3));
    } else {
      k = EdgeKernel::grid(random_symmetric(rng, 4, 0.0, 1.0));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int i = 0; i < 3; ++i) v.emplace_back(unit(rng));
    }
    double total = 0.0;
    for (const auto& a : graphs) total += conditional_prob(a, v, *k);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {worst <= 1e-10, fmt("max |sum_A P(A|v) - 1| = %.3g over 50 (v, kernel) pairs (limit 1e-10)", worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked example density", 1, worked_example},
      {2, "kernel smoothing keeps edge density", 5, smoothing_invariance},
      {3, "Erdos-Renyi reduction", 10, erdos_renyi},
      {4, "block model reduction", 30, block_model},
      {5, "permutation invariance and its converse", 30, permutation_invariance},
      {6, "snapshot densities match the induced graphon", 60, snapshot_densities},
      {7, "finite kernel mixture", 30, kernel_mixture},
      {8, "recurrence of a watched pattern", 30, recurrence},
      {9, "time averages converge from any start", 60, birkhoff},
      {10, "cut metric oracles", 10, cut_metrics},
      {11, "conditional law normalization", 1, normalization},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_seconds;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s [%2d] %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
