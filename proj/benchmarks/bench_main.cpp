#include <benchmark/benchmark.h>

#include "qschur/factor_check.hpp"
#include "qschur/realization.hpp"

using namespace qschur;

namespace {

StarPoly random_poly(Rng& rng, int degree) {
  std::vector<Quaternion> c;
  for (int k = 0; k <= degree; ++k) c.push_back(sample_box(rng));
  return StarPoly::scalar(c);
}

ZeroSet chain(int n) {
  ZeroSet z;
  for (int k = 0; k < n; ++k) z.points.push_back({Quaternion{0.1 * k - 0.3, 0.2 + 0.05 * k, 0.3, 0.1} * 0.9, 1});
  return z;
}

}  // namespace

static void BM_QuaternionProduct(benchmark::State& state) {
  Rng rng(1);
  Quaternion a = sample_box(rng), b = sample_box(rng);
  for (auto _ : state) {
    a = a * b;
    a = a / modulus(a);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_QuaternionProduct);

static void BM_StarMul(benchmark::State& state) {
  Rng rng(2);
  const int deg = static_cast<int>(state.range(0));
  const StarPoly f = random_poly(rng, deg), g = random_poly(rng, deg);
  for (auto _ : state) benchmark::DoNotOptimize(star_mul(f, g));
  state.SetComplexityN(deg);
}
BENCHMARK(BM_StarMul)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_BuildProduct(benchmark::State& state) {
  const ZeroSet z = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_product(z));
}
BENCHMARK(BM_BuildProduct)->DenseRange(1, 6);

static void BM_HermEigen(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = sample_box(rng);
  const QMatrix h = hermitian_part(m);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eigen_neg(h));
}
BENCHMARK(BM_HermEigen)->RangeMultiplier(2)->Range(8, 64);

static void BM_NegSquaresTrial(benchmark::State& state) {
  const FactoredProduct inv = product_inverse(build_product(chain(2)));
  const SchurFunction s = SchurFunction::from_product(inv);
  NegSquaresOptions opts;
  opts.trials = 1;
  opts.batch = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_neg_squares(s, opts));
}
BENCHMARK(BM_NegSquaresTrial)->Arg(10)->Arg(40);

static void BM_SolveStein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QMatrix a = 2.0 * QMatrix::identity(n), c(1, n);
  Rng rng(4);
  for (std::size_t r = 0; r < n; ++r) {
    c(0, r) = sample_box(rng);
    if (r + 1 < n) a(r, r + 1) = 0.3 * sample_box(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_stein(a, c));
}
BENCHMARK(BM_SolveStein)->DenseRange(2, 8, 2);

static void BM_KreinLangerCheck(benchmark::State& state) {
  const FactorizationCase c = synthesize_generalized_schur(
      ZeroSet{Domain::ball, {{{0.3, 0.4, 0.1, -0.2}, 1}}, {}}, Quaternion{0.5, 0, 0.2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(krein_langer_check(c));
}
BENCHMARK(BM_KreinLangerCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
