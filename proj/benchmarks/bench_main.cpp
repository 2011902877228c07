#include <benchmark/benchmark.h>

#include "cstar/kernels.hpp"
#include "cstar/positivity.hpp"
#include "cstar/spectrum.hpp"

using namespace cstar;

static void BM_SqrtUnit(benchmark::State& state) {
  const Element x = Element::diag_real({Rational(1, 4), Rational(3, 2), Rational(7, 8)});
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sqrt_unit(x, n));
}
BENCHMARK(BM_SqrtUnit)->DenseRange(4, 16, 4);

static void BM_CirculantNorm(benchmark::State& state) {
  std::vector<Gaussian> row(8);
  row[1] = Gaussian(1);
  row[7] = Gaussian(1);
  row[2] = Gaussian(Rational(1, 3), Rational(1, 5));
  const Element a = Element::circulant(row);
  const auto k = static_cast<Precision>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seminorm(a).bound(k));
}
BENCHMARK(BM_CirculantNorm)->DenseRange(2, 10, 4);

static void BM_CertEntails(benchmark::State& state) {
  const Element left[] = {Element::diag_real({1, -1, 2}), Element::diag_real({2, 1, -1})};
  const Element right[] = {Element::diag_real({1, 0, -2}), Element::diag_real({-1, 1, 1})};
  const CertSearchOptions opts{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(cert_entails(left, right, 3, opts));
}
BENCHMARK(BM_CertEntails)->DenseRange(1, 4, 1);

static void BM_Norm0(benchmark::State& state) {
  const Element a = Element::diag_real({Rational(22, 7), Rational(-355, 113), Rational(9, 4)});
  const auto k = static_cast<Precision>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(norm0(a).bound(k));
}
BENCHMARK(BM_Norm0)->Arg(10)->Arg(30);

static void BM_InvertOnePlus(benchmark::State& state) {
  const Element a = Element::diag_complex({Gaussian(1, 2), Gaussian(Rational(1, 3)), Gaussian(0, -2)});
  for (auto _ : state) benchmark::DoNotOptimize(invert_one_plus(a, pow2(-state.range(0))));
}
BENCHMARK(BM_InvertOnePlus)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
