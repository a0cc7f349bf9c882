#include "sharpineq/functionals.hpp"
#include "sharpineq/quad.hpp"
#include "sharpineq/special.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace sharpineq;

static void BM_Gamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sharpineq::gamma(x));
    x = x < 150.0 ? x * 1.07 : 0.37;
  }
}
BENCHMARK(BM_Gamma);

static void BM_SobolevConstant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_constant(5, 2.5));
}
BENCHMARK(BM_SobolevConstant);

static void BM_QuadSingular(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate([](double r) { return std::pow(r, -0.9); }, 0.0, 1.0));
}
BENCHMARK(BM_QuadSingular);

static void BM_QuadSemiInfinite(benchmark::State& state) {
  const auto f = [](double x) { return x * x / std::pow(1.0 + x * x, 3); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_semi_infinite(f, 0.0));
}
BENCHMARK(BM_QuadSemiInfinite);

static void BM_EvaluateSobolev(benchmark::State& state) {
  const InequalityParams P = sobolev_params(3, 2.0, 1.0);
  const RadialProfile u = aubin_talenti({1.0, 1.0}, 3, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(InequalityId::SobolevRn, u, P));
}
BENCHMARK(BM_EvaluateSobolev)->Unit(benchmark::kMicrosecond);

static void BM_EvaluateBallExtremal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const InequalityParams P = sobolev_params(n, 2.0, 1.0);
  const RadialProfile u = ball_extremal({1.0, 1.0}, n, 2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(InequalityId::BallSobolevRadial, u, P));
}
BENCHMARK(BM_EvaluateBallExtremal)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_EvaluateZonalCkn(benchmark::State& state) {
  const InequalityParams P = make_params(3, 2.0, 2.5, 4.0, 1.0);
  AngularFactor h;
  h.value = [](double t) { return 1.0 + 0.3 * t; };
  h.derivative = [](double) { return 0.3; };
  const ZonalFunction u{bump(1.0, 0.0, 0.8), h};
  const SharpConstant k{1.0, true};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(InequalityId::BallCkn, u, P, k));
}
BENCHMARK(BM_EvaluateZonalCkn)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
