#include <benchmark/benchmark.h>

#include "fractarc/arc.hpp"
#include "fractarc/measure.hpp"

using namespace fractarc;

static void CantorGeneration(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    RatioCantorSet e(RatioSequence::dyadic());
    e.build_through(k);
    benchmark::DoNotOptimize(e.left_endpoints(k).data());
  }
  state.SetComplexityN(std::int64_t{1} << k);
}
BENCHMARK(CantorGeneration)->DenseRange(8, 16, 2)->Complexity();

static void BallMass(benchmark::State& state) {
  RatioCantorSet e(RatioSequence::dyadic());
  e.build_through(16);
  NaturalMeasure mu(e, 16);
  Sampler sampler(1);
  const auto samples = sample_endpoint_radii(e, 16, 256, sampler, e.length(16).get_d(), 1.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& s = samples[i++ % samples.size()];
    benchmark::DoNotOptimize(mu.ball_mass(s.x, s.r, 16));
  }
}
BENCHMARK(BallMass);

static void ArcBuild(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1);
    arc.build_through(depth);
    benchmark::DoNotOptimize(arc.depth());
  }
  state.SetComplexityN(std::int64_t{1} << (2 * depth));
}
BENCHMARK(ArcBuild)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void Injectivity(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1);
  arc.build_through(depth);
  for (auto _ : state) benchmark::DoNotOptimize(verify_injectivity(arc, depth).pass);
}
BENCHMARK(Injectivity)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void Evaluate(benchmark::State& state) {
  ArcApproximation arc(RatioCantorSet(RatioSequence::dyadic()), SelfSimilarCantor(make_rational(1, 3)), 1);
  arc.build_through(5);
  Sampler sampler(3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(arc, sampler.uniform(), 5));
}
BENCHMARK(Evaluate);
