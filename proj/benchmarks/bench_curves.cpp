#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "rcurves/curve.hpp"

namespace {

using namespace rcurves;

struct Records {
  std::vector<PerturbationRecord> records;
  std::vector<double> weights;
};

Records random_records(std::size_t n) {
  testing::Rng rng(11);
  Records r;
  for (std::size_t i = 0; i < n; ++i) {
    PerturbationRecord rec;
    rec.index = i;
    rec.status = RecordStatus::Found;
    rec.distance = testing::uniform(rng, 0, 1);
    r.records.push_back(rec);
    r.weights.push_back(1.0 / static_cast<double>(n));
  }
  return r;
}

void BM_BuildCurve(benchmark::State& state) {
  const auto r = random_records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_curve(r.records, r.weights, 1.0, {NormKind::L2, "m", "d", Estimator::Attack}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildCurve)->Arg(1000)->Arg(100000);

void BM_Intersections(benchmark::State& state) {
  const auto a = random_records(static_cast<std::size_t>(state.range(0)));
  auto b = random_records(static_cast<std::size_t>(state.range(0)));
  for (auto& rec : b.records) rec.distance = rec.distance * rec.distance;
  const CurveMetadata meta{NormKind::L2, "m", "d", Estimator::Attack};
  const auto ca = build_curve(a.records, a.weights, 1.0, meta);
  const auto cb = build_curve(b.records, b.weights, 1.0, meta);
  for (auto _ : state) benchmark::DoNotOptimize(intersections(ca, cb).size());
}
BENCHMARK(BM_Intersections)->Arg(10000);

void BM_Evaluate(benchmark::State& state) {
  const auto r = random_records(100000);
  const auto c = build_curve(r.records, r.weights, 1.0, {NormKind::L2, "m", "d", Estimator::Attack});
  double eps = 0;
  for (auto _ : state) {
    eps = eps > 1 ? 0 : eps + 1e-4;
    benchmark::DoNotOptimize(c(eps));
  }
}
BENCHMARK(BM_Evaluate);

}  // namespace
