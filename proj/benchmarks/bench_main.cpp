#include <benchmark/benchmark.h>

#include "dualbound/adauctions.hpp"
#include "dualbound/capital.hpp"
#include "dualbound/exact_num.hpp"
#include "dualbound/lp_solver.hpp"
#include "dualbound/vbp.hpp"

using namespace dualbound;

static void BM_SolveExactVbp(benchmark::State& state) {
  const auto p = vbp::primal(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(p));
}
BENCHMARK(BM_SolveExactVbp)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_SolveFloatVbp(benchmark::State& state) {
  const auto p = vbp::primal(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_float(p, 1e-9));
}
BENCHMARK(BM_SolveFloatVbp)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SolveExactAdAuctions(benchmark::State& state) {
  const auto p = adauctions::primal(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(p));
}
BENCHMARK(BM_SolveExactAdAuctions)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_SolveExactCapital(benchmark::State& state) {
  const auto p = capital::primal(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(p));
}
BENCHMARK(BM_SolveExactCapital)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_VbpSuboptimalVerify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vbp::verify(state.range(0), vbp::CertificateKind::Suboptimal));
}
BENCHMARK(BM_VbpSuboptimalVerify)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_VbpOptimalSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vbp::sweep_optimal(state.range(0)));
}
BENCHMARK(BM_VbpOptimalSweep)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_VbpRatioSeries(benchmark::State& state) {
  const std::vector<long> ds = {state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(vbp::optimal_ratio_series(ds));
}
BENCHMARK(BM_VbpRatioSeries)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CapitalVerify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(capital::verify(state.range(0), Rational(3, 10)));
}
BENCHMARK(BM_CapitalVerify)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_AdTightness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(adauctions::check_tightness(adauctions::certificate(state.range(0))));
}
BENCHMARK(BM_AdTightness)->Arg(10)->Arg(50);

static void BM_Pow2Compare(benchmark::State& state) {
  const Rational a(3, 7), b(5, 11);
  for (auto _ : state) benchmark::DoNotOptimize(pow2_exponent_compare(a, b, state.range(0)));
}
BENCHMARK(BM_Pow2Compare)->Arg(10)->Arg(40'000);
BENCHMARK_MAIN();
