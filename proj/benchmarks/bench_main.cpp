#include <benchmark/benchmark.h>

#include "chistar/bounds.hpp"
#include "chistar/evaluator.hpp"
#include "chistar/factor.hpp"
#include "chistar/heegner.hpp"
#include "chistar/qseries.hpp"
#include "chistar/search.hpp"

using namespace chistar;

namespace {

void BM_ChiExpansion(benchmark::State& state) {
  // cached after the first build, so this is mostly the truncation copy
  for (auto _ : state) benchmark::DoNotOptimize(chi_expansion(state.range(0)));
}
BENCHMARK(BM_ChiExpansion)->Arg(50)->Arg(400);

void BM_EvalJChiStar(benchmark::State& state) {
  EvalOptions options;
  options.prec_bits = state.range(0);
  const UHPoint z = UHPoint::from_decimal("0.123", "1.37", options.prec_bits);
  for (auto _ : state) benchmark::DoNotOptimize(eval_j_chi_star(z, options));
}
BENCHMARK(BM_EvalJChiStar)->Arg(128)->Arg(512)->Arg(2048);

void BM_SpecialValues(benchmark::State& state) {
  const long D = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(special_values(D));
}
BENCHMARK(BM_SpecialValues)->Arg(163)->Arg(479);

void BM_ClassPolynomialChiStar(benchmark::State& state) {
  const long D = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(class_polynomial(D, PolyKind::ChiStar));
}
BENCHMARK(BM_ClassPolynomialChiStar)->Arg(71)->Arg(311)->Unit(benchmark::kMillisecond);

void BM_FactorClassPolynomial(benchmark::State& state) {
  const QPoly h = class_polynomial(-state.range(0), PolyKind::J).poly;
  for (auto _ : state) benchmark::DoNotOptimize(is_irreducible_over_q(h));
}
BENCHMARK(BM_FactorClassPolynomial)->Arg(71)->Arg(311)->Unit(benchmark::kMillisecond);

void BM_Certificates(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(all_certificates());
}
BENCHMARK(BM_Certificates)->Unit(benchmark::kMillisecond);

void BM_AoSearch(benchmark::State& state) {
  const CurvePolynomial p(1, {{1, 0, Rational(1)}, {0, 1, Rational(-3)}, {0, 0, Rational(-1728)}});
  SearchOptions options;
  options.d_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(ao_search(p, options));
}
BENCHMARK(BM_AoSearch)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
