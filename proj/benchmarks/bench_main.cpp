#include <benchmark/benchmark.h>

#include <limits>
#include <vector>

#include "slehull/density.hpp"
#include "slehull/loewner.hpp"
#include "slehull/moments.hpp"
#include "slehull/series.hpp"
#include "slehull/stats.hpp"

using namespace slehull;

namespace {

void BM_TailReciprocal(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  std::vector<double> tail(M);
  for (std::size_t k = 0; k < M; ++k) tail[k] = 0.1 * static_cast<double>(k + 1);
  const TailSeries<double> h(Lead::Affine, -0.5, tail);
  for (auto _ : state) benchmark::DoNotOptimize(tail_reciprocal(h, M));
}
BENCHMARK(BM_TailReciprocal)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_AssembleG(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  std::vector<double> g(M), atilde(M);
  for (std::size_t k = 0; k < M; ++k) {
    g[k] = 0.05 * static_cast<double>(k + 1);
    atilde[k] = 0.3 / static_cast<double>(k + 1);
  }
  const auto gs = TailSeries<double>::affine(g);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_G<double>(gs, atilde, 1.3, -0.2, M));
}
BENCHMARK(BM_AssembleG)->Arg(4)->Arg(8)->Arg(16);

// one driving path to absorption, no coefficients; same streams as BM_SampleSleData
void BM_Drive(benchmark::State& state) {
  const SleParams p{1, -5, 1, -1};
  std::uint64_t stream = 0;
  for (auto _ : state) {
    NormalStream normal(Seed{2, stream++});
    benchmark::DoNotOptimize(drive(p, {}, normal, [](const StepRecord&) {}));
  }
}
BENCHMARK(BM_Drive);

void BM_SampleSleData(benchmark::State& state) {
  const SleParams p{1, -5, 1, -1};
  const auto M = static_cast<std::size_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_sle_data(p, {}, M, Seed{2, stream++}));
}
BENCHMARK(BM_SampleSleData)->Arg(1)->Arg(4)->Arg(8)->Arg(16);

void BM_SymbolicMoments(benchmark::State& state) {
  const auto list = indices_up_to_degree(HalfInteger{state.range(0)});
  for (auto _ : state) {
    MomentSolver s;
    for (const auto& m : list) benchmark::DoNotOptimize(s.solve(m));
  }
  state.counters["indices"] = static_cast<double>(list.size());
}
BENCHMARK(BM_SymbolicMoments)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_NumericMoments(benchmark::State& state) {
  const auto list = indices_up_to_degree(HalfInteger{state.range(0)});
  for (auto _ : state) {
    NumericMomentSolver s(ratio(1, 2), ratio(-11, 2));
    for (const auto& m : list) benchmark::DoNotOptimize(s.solve(m));
  }
}
BENCHMARK(BM_NumericMoments)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CapacitySampler(benchmark::State& state) {
  const CapacityLaw law(4, -2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_capacities(law, 3, 10000));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_CapacitySampler);

void BM_KsTwoSample(benchmark::State& state) {
  const CapacityLaw law(4, -2);
  const auto a = sample_capacities(law, 4, 10000);
  const auto b = sample_capacities(law, 5, 10000);
  for (auto _ : state) benchmark::DoNotOptimize(ks_two_sample(a, b));
}
BENCHMARK(BM_KsTwoSample);

}  // namespace

BENCHMARK_MAIN();
