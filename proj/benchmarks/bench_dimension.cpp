#include <benchmark/benchmark.h>

#include <cmath>

#include "fractarc/dimension.hpp"
#include "fractarc/metric.hpp"

using namespace fractarc;

static void BoxCountProduct(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto cloud = product_sample(ProductCantor{SelfSimilarCantor(make_rational(1, 3)), 2, 0.0}, g);
  for (auto _ : state) benchmark::DoNotOptimize(box_count(cloud, std::ldexp(1.0, -g)));
  state.SetComplexityN(static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(BoxCountProduct)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond)->Complexity();

static void NetSnowflake(benchmark::State& state) {
  const auto cloud = interval_sample(static_cast<int>(state.range(0)));
  SnowflakeMetric metric(von_koch_exponent());
  for (auto _ : state) benchmark::DoNotOptimize(ball_net_count(metric, cloud, 0.01));
}
BENCHMARK(NetSnowflake)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void NetRug(benchmark::State& state) {
  const auto space = RugSpace::snowflake(von_koch_exponent());
  const int n = static_cast<int>(state.range(0));
  const auto cloud = sample_rug(space, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(ball_net_count(space, cloud, 0.05));
  state.SetComplexityN(static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(NetRug)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();
