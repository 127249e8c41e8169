#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "rcurves/interclass.hpp"

namespace {

using namespace rcurves;

Dataset image_like(std::size_t n, std::size_t m) {
  testing::Rng rng(7);
  return testing::random_dataset(rng, n, m, 10);
}

NormKind norm_arg(int64_t k) { return k == 0 ? NormKind::Linf : k == 1 ? NormKind::L2 : NormKind::L1; }

void BM_NearestOtherClass(benchmark::State& state) {
  const auto data = image_like(static_cast<std::size_t>(state.range(0)), 784);
  const NormKind p = norm_arg(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(interclass_distances(data, p).smallest);
  const double pairs = static_cast<double>(state.range(0)) * static_cast<double>(state.range(0));
  state.counters["pairs/s"] = benchmark::Counter(pairs, benchmark::Counter::kIsIterationInvariantRate);
  state.SetLabel(std::string(to_string(p)));
}
BENCHMARK(BM_NearestOtherClass)->ArgsProduct({{500, 2000}, {0, 1, 2}})->Unit(benchmark::kMillisecond);

void BM_PairwiseExtremes(benchmark::State& state) {
  const auto data = image_like(static_cast<std::size_t>(state.range(0)), 784);
  for (auto _ : state) benchmark::DoNotOptimize(interclass_extremes(data, NormKind::L2).largest);
}
BENCHMARK(BM_PairwiseExtremes)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Dedup(benchmark::State& state) {
  const auto data = image_like(static_cast<std::size_t>(state.range(0)), 784);
  for (auto _ : state) benchmark::DoNotOptimize(dedup(data).removed);
}
BENCHMARK(BM_Dedup)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
