#include <benchmark/benchmark.h>

#include <random>

#include "pbands/bandedges.hpp"
#include "pbands/counterexample.hpp"
#include "pbands/floquet.hpp"

namespace {

using namespace pbands;

Potential random_potential(const PeriodVector& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> values(q.cell_size());
  for (double& x : values) x = u(rng);
  return Potential(q, values);
}

// Assemble and diagonalize one fiber matrix; the range is q_1 = q_2.
void BM_FiberEigenvalues(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const PeriodVector q{side, side};
  const FiberBuilder builder(random_potential(q, 1));
  const Phase theta({0.3 / side, 0.7 / side}, q);
  for (auto _ : state) benchmark::DoNotOptimize(builder.eigenvalues(theta));
  state.SetLabel("Q=" + std::to_string(q.cell_size()));
}
BENCHMARK(BM_FiberEigenvalues)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

// Full grid sweep plus refinement for V_q at the given m.
void BM_CertifiedEdges(benchmark::State& state) {
  const PeriodVector q{2, 2};
  const Potential v = build_vq(CounterexampleSpec{q, 0.1});
  const GridSpec grid = GridSpec::uniform(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certified_edges(q, v, grid));
  state.counters["points"] = static_cast<double>(grid.total_points());
}
BENCHMARK(BM_CertifiedEdges)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_FreeSweep(benchmark::State& state) {
  const PeriodVector q{2, 3};
  const GridSpec grid = GridSpec::uniform_default(2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_bands(q, Potential::zero(q), grid));
}
BENCHMARK(BM_FreeSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
