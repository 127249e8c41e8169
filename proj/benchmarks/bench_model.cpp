#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "rcurves/attacks.hpp"
#include "rcurves/linear_exact.hpp"

namespace {

using namespace rcurves;

MultiClassNet mnist_mlp() {
  testing::Rng rng(3);
  return MultiClassNet(TensorShape{{784}}, {testing::random_dense(rng, 784, 256, 0.05), ReLU{},
                                            testing::random_dense(rng, 256, 10, 0.1)});
}

MultiClassNet small_cnn() {
  testing::Rng rng(4);
  Conv2D cv;
  cv.filters = 8;
  cv.kernel_h = cv.kernel_w = 3;
  cv.in_channels = 1;
  cv.stride = 2;
  cv.padding = Padding::Same;
  cv.weights = testing::random_vector(rng, 8 * 9, -0.3, 0.3);
  cv.bias = testing::random_vector(rng, 8, -0.1, 0.1);
  return MultiClassNet(TensorShape{{28, 28, 1}}, {cv, ReLU{}, testing::random_dense(rng, 14 * 14 * 8, 10, 0.05)});
}

void BM_ForwardMlp(benchmark::State& state) {
  const auto net = mnist_mlp();
  testing::Rng rng(5);
  const auto x = testing::random_vector(rng, 784, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_ForwardMlp);

void BM_GradientMlp(benchmark::State& state) {
  const Classifier net = mnist_mlp();
  testing::Rng rng(5);
  const auto x = testing::random_vector(rng, 784, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_loss(net, x, 3, Loss::CrossEntropy).loss);
}
BENCHMARK(BM_GradientMlp);

void BM_GradientCnn(benchmark::State& state) {
  const Classifier net = small_cnn();
  testing::Rng rng(6);
  const auto x = testing::random_vector(rng, 784, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_loss(net, x, 3, Loss::CwMargin).loss);
}
BENCHMARK(BM_GradientCnn);

void BM_ExactDistance(benchmark::State& state) {
  testing::Rng rng(8);
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto f = testing::random_linear(rng, m);
  const auto x = testing::random_vector(rng, m, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(exact_distance(f, x, NormKind::L2).distance);
}
BENCHMARK(BM_ExactDistance)->Arg(10)->Arg(784);

void BM_PgdLinear(benchmark::State& state) {
  testing::Rng rng(9);
  const auto m = static_cast<std::size_t>(state.range(0));
  const Classifier f = testing::random_linear(rng, m);
  const auto x = testing::random_vector(rng, m, 0.25, 0.75);
  const int y = predict(f, x);
  for (auto _ : state) benchmark::DoNotOptimize(pgd_minimal_linf(f, x, y, {}).distance);
}
BENCHMARK(BM_PgdLinear)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_CwLinear(benchmark::State& state) {
  testing::Rng rng(10);
  const auto m = static_cast<std::size_t>(state.range(0));
  const Classifier f = testing::random_linear(rng, m);
  const auto x = testing::random_vector(rng, m, 0.25, 0.75);
  const int y = predict(f, x);
  AttackConfig cfg;
  cfg.norm = NormKind::L2;
  for (auto _ : state) benchmark::DoNotOptimize(cw_minimal_l2(f, x, y, cfg).distance);
}
BENCHMARK(BM_CwLinear)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

}  // namespace
