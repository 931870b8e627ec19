#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "specrank/ero_model.hpp"
#include "specrank/metrics.hpp"
#include "specrank/ranking.hpp"

using namespace specrank;

namespace {

ComparisonMatrix instance(std::size_t n, double p, double eta) {
  const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, n);
  return sample_comparisons(truth, EroParams{n, p, eta, 1}).comparisons;
}

void BM_Sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto truth = make_ground_truth(GroundTruthKind::kUniformGrid, n);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_comparisons(truth, EroParams{n, 0.5, 0.5, seed++}));
  }
}
BENCHMARK(BM_Sample)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RankUnnormalized(benchmark::State& state) {
  const auto h = instance(static_cast<std::size_t>(state.range(0)), 0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(rank_unnormalized(h));
}
BENCHMARK(BM_RankUnnormalized)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RankNormalized(benchmark::State& state) {
  const auto h = instance(static_cast<std::size_t>(state.range(0)), 0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(rank_normalized(h));
}
BENCHMARK(BM_RankNormalized)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Displacement(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 gen(1);
  Permutation a(n), b(n);
  std::iota(a.begin(), a.end(), std::size_t{1});
  std::iota(b.begin(), b.end(), std::size_t{1});
  std::shuffle(a.begin(), a.end(), gen);
  std::shuffle(b.begin(), b.end(), gen);
  for (auto _ : state) {
    if (state.range(1) == 0) {
      benchmark::DoNotOptimize(displacement(a, b));
    } else {
      benchmark::DoNotOptimize(displacement_fast(a, b));
    }
  }
}
BENCHMARK(BM_Displacement)->Args({1000, 0})->Args({1000, 1})->Args({10000, 1});

}  // namespace
BENCHMARK_MAIN();
