#include <random>

#include <benchmark/benchmark.h>

#include "graphon_dyn/dynamics.hpp"
#include "graphon_dyn/ergodics.hpp"
#include "graphon_dyn/graphon.hpp"
#include "graphon_dyn/homomorphism.hpp"

using namespace graphon_dyn;

namespace {

SimpleGraph er_graph(std::size_t n, double p, Seed seed) {
  const std::vector<State> v(n, State{std::size_t{0}});
  return sample_graph(EdgeKernel::constant(p), v, seed);
}

Matrix random_symmetric(std::size_t k, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(lo, hi);
  Matrix m(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) m(a, b) = m(b, a) = unit(rng);
  return m;
}

void BM_HomCountTriangle(benchmark::State& state) {
  const auto g = er_graph(static_cast<std::size_t>(state.range(0)), 0.3, 1);
  const auto f = complete_graph(3);
  for (auto _ : state) benchmark::DoNotOptimize(hom_count(f, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HomCountTriangle)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_HomCountCycle5(benchmark::State& state) {
  const auto g = er_graph(static_cast<std::size_t>(state.range(0)), 0.1, 2);
  const auto f = cycle_graph(5);
  for (auto _ : state) benchmark::DoNotOptimize(hom_count(f, g));
}
BENCHMARK(BM_HomCountCycle5)->Arg(64)->Arg(128);

void BM_HomDensityStep(benchmark::State& state) {
  const auto w = StepGraphon::equal_blocks(random_symmetric(static_cast<std::size_t>(state.range(0)), 0, 1, 3));
  const auto f = cycle_graph(4);
  for (auto _ : state) benchmark::DoNotOptimize(hom_density_step(f, w));
}
BENCHMARK(BM_HomDensityStep)->Arg(4)->Arg(8)->Arg(16);

void BM_CutNormExact(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto u = SignedStepKernel::make(std::vector<double>(k, 1.0 / static_cast<double>(k)),
                                        random_symmetric(k, -1, 1, 4));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(u));
}
BENCHMARK(BM_CutNormExact)->DenseRange(4, 10, 2);

void BM_CutNormLocalSearch(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto u = SignedStepKernel::make(std::vector<double>(k, 1.0 / static_cast<double>(k)),
                                        random_symmetric(k, -1, 1, 5));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(u));
}
BENCHMARK(BM_CutNormLocalSearch)->Arg(16)->Arg(64);

void BM_CutDistance(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = StepGraphon::equal_blocks(random_symmetric(m, 0, 1, 6));
  const auto b = StepGraphon::equal_blocks(random_symmetric(m, 0, 1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(cut_distance(a, b));
}
BENCHMARK(BM_CutDistance)->DenseRange(3, 6, 1);

void BM_SampleGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<State> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(i % 2);
  const auto k = EdgeKernel::block({{0.8, 0.2}, {0.2, 0.8}});
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_graph(k, v, seed++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}
BENCHMARK(BM_SampleGraph)->Arg(200)->Arg(1000);

void BM_Birkhoff(benchmark::State& state) {
  const auto process = make_markov(StateSpace::finite(2), TransitionMatrix::make({{0.9, 0.1}, {0.1, 0.9}}),
                                   Distribution::finite({1, 0}));
  const auto k = EdgeKernel::block({{1, 0}, {0, 1}});
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(birkhoff_average(process, k, complete_graph(2), steps, 9));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Birkhoff)->Arg(100000);

}  // namespace
BENCHMARK_MAIN();
