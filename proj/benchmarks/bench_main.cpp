#include <benchmark/benchmark.h>

#include "singmod/analytic.hpp"
#include "singmod/cmval.hpp"
#include "singmod/qseries.hpp"
#include "singmod/quadarith.hpp"

using namespace singmod;

namespace {

cmval::HeegnerDivisor divisor_107() {
  cmval::HeegnerDivisor div(47);
  div.add(-11, 41, make_rational(1, 2));
  div.add(-11, -41, make_rational(1, 2));
  return div;
}

void BM_ClassGroup(benchmark::State& state) {
  const std::int64_t D = -state.range(0);
  for (auto _ : state) {
    quad::ClassGroup G(quad::Discriminant::fundamental(D));
    benchmark::DoNotOptimize(G.h());
  }
}
BENCHMARK(BM_ClassGroup)->Arg(107)->Arg(971)->Arg(10007)->Arg(100003);

void BM_Valuations(benchmark::State& state) {
  const auto div = divisor_107();
  quad::ClassGroupCache::global().get(-107);
  for (auto _ : state) benchmark::DoNotOptimize(cmval::valuations(47, -107, 9, div));
}
BENCHMARK(BM_Valuations);

void BM_HauptmodulSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(series::hauptmodul47_series(state.range(0)));
}
BENCHMARK(BM_HauptmodulSeries)->Arg(50)->Arg(200)->Arg(800);

void BM_HauptmodulEval(benchmark::State& state) {
  const auto ctx = analytic::PrecisionContext::from_bits(state.range(0));
  const auto z = analytic::BigComplex::from_sqrt_imag(make_rational(-9, 94), make_rational(107, 94 * 94), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::hauptmodul47(z, ctx));
}
BENCHMARK(BM_HauptmodulEval)->Arg(128)->Arg(256)->Arg(1024);

void BM_ClassPolynomial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(analytic::class_polynomial_verified(analytic::hauptmodul47, -107, 47, 9));
}
BENCHMARK(BM_ClassPolynomial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
