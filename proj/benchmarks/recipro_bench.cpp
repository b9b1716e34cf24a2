#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "recipro/bounds.hpp"
#include "recipro/harness.hpp"
#include "recipro/mixture.hpp"
#include "recipro/reciprocator.hpp"

namespace {

using namespace recipro;

ZeroMeanDiscreteDist example() {
  return ZeroMeanDiscreteDist::from_atoms(
      {{-1, ratio(1, 2)}, {0, ratio(1, 10)}, {1, ratio(3, 10)}, {2, ratio(1, 10)}});
}

// Law with k atoms at -k..-1 and 1..k, skewed weights, recentered.
ZeroMeanDiscreteDist wide_law(int k) {
  std::vector<Atom> atoms;
  for (int i = 1; i <= k; ++i) {
    atoms.push_back({Rational(-i), Rational(i)});
    atoms.push_back({Rational(2 * i), Rational(k + 1 - i)});
  }
  const Rational total = ratio(1, k * (k + 1));
  for (auto& a : atoms) a.weight *= total;
  return center(atoms);
}

void BM_DecomposeW(benchmark::State& state) {
  const auto d = wide_law(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_w(d));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecomposeW)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_ReciprocalEval(benchmark::State& state) {
  const DiscreteReciprocator r(wide_law(16));
  const Rational u = ratio(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(r.reciprocal(Rational(-7), u));
}
BENCHMARK(BM_ReciprocalEval);

void BM_ExactSwLaw(benchmark::State& state) {
  const std::vector<ZeroMeanDiscreteDist> dists(static_cast<std::size_t>(state.range(0)), example());
  for (auto _ : state) benchmark::DoNotOptimize(exact_sw_law(dists));
}
BENCHMARK(BM_ExactSwLaw)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_BernoulliLcBound(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double lambda = lambda_star(1.0 / 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli_lc_bound(n, 1.0 / 3.0, lambda, 2.0));
}
BENCHMARK(BM_BernoulliLcBound)->RangeMultiplier(4)->Range(4, 1024);

void BM_MonteCarloTail(benchmark::State& state) {
  const std::vector<ZeroMeanDiscreteDist> dists(5, example());
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_tail(dists, Statistic::s_w, 1.0, grid, reps, 7));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_MonteCarloTail)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
