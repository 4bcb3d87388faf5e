#include <benchmark/benchmark.h>

#include "graphonlab/densities.hpp"
#include "graphonlab/metrics.hpp"
#include "graphonlab/sampling.hpp"

using namespace graphonlab;

namespace {

// Values on a 1/16 grid so palettes stay small, as in typical inputs.
StepGraphon random_graphon(std::size_t k, std::uint64_t seed) {
  RandomSource rs(seed);
  std::vector<Rational> cells(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      cells[i * k + j] = cells[j * k + i] = make_rational(static_cast<long>(rs.next_u64() % 17), 16);
    }
  }
  return StepGraphon(k, cells);
}

void BM_CutNormExact(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const SignedStepFunction f = difference(random_graphon(k, 1), random_graphon(k, 2));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(f));
}
BENCHMARK(BM_CutNormExact)->DenseRange(8, 18, 2)->Unit(benchmark::kMillisecond);

void BM_CutNormBounds(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const SignedStepFunction f = difference(random_graphon(k, 3), random_graphon(k, 4));
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm_bounds(f));
}
BENCHMARK(BM_CutNormBounds)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TindGeneric(benchmark::State& state) {
  const StepGraphon w = random_graphon(static_cast<std::size_t>(state.range(0)), 5);
  const FiniteGraph f = FiniteGraph(4, {{0, 1}, {1, 2}, {2, 3}});
  for (auto _ : state) benchmark::DoNotOptimize(t_ind_exact(f, w));
}
BENCHMARK(BM_TindGeneric)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TindZeroOne(benchmark::State& state) {
  RandomSource rs(6);
  const FiniteGraph g = sample_graph(StepGraphon(1, {make_rational(1, 2)}), static_cast<std::size_t>(state.range(0)), rs);
  const StepGraphon w = graphon_of_graph(g);
  const FiniteGraph f = FiniteGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  for (auto _ : state) benchmark::DoNotOptimize(t_ind_exact(f, w));
}
BENCHMARK(BM_TindZeroOne)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
