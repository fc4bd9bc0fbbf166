#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "summa/continuation/evaluator.hpp"
#include "summa/continuation/growth.hpp"
#include "summa/momentpde/momentpde.hpp"
#include "summa/seqcore/descriptor.hpp"
#include "summa/specfun/lerch.hpp"
#include "summa/specfun/stirling.hpp"

using namespace summa;

static void BM_HurwitzLerch(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const Complex t = std::polar(0.8, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::hurwitz_lerch(t, s, Complex(1.5, 0.3)));
}
BENCHMARK(BM_HurwitzLerch)->Arg(1)->Arg(2)->Arg(3);

static void BM_LerchOnRay(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const Complex t = std::polar(r, std::numbers::pi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::hurwitz_lerch(t, 1, Complex(1.0, 0.0)));
}
BENCHMARK(BM_LerchOnRay)->Arg(1)->Arg(100)->Arg(1000);

static void BM_StirlingTables(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::stirling_tables(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_StirlingTables)->Arg(16)->Arg(64);

// fresh evaluator per iteration so the memo cache does not hide the recursion
static void BM_PowerSumInverse(benchmark::State& state) {
  const auto d = seq::power_sum({Number(2), Number(1)});
  const Complex z = std::polar(static_cast<double>(state.range(0)), 3.0);
  for (auto _ : state) {
    auto ev = cont::ContinuationEvaluator::create(d, cont::Target::inverse);
    benchmark::DoNotOptimize(ev(z));
  }
}
BENCHMARK(BM_PowerSumInverse)->Arg(10)->Arg(1000)->Arg(100000);

static void BM_ExpPolyInverse(benchmark::State& state) {
  const auto d = seq::exp_polynomial({{Polynomial({Number(1)}), Number(1)},
                                      {Polynomial({Number(1), Number(1)}), Number(2)}});
  const Complex z = std::polar(static_cast<double>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(cont::inverse_eval_exp_poly(d, z));
}
BENCHMARK(BM_ExpPolyInverse)->Arg(10)->Arg(100);

static void BM_GrowthScan(benchmark::State& state) {
  const auto d = seq::power_sum({Number(2), Number(1)});
  cont::ScanOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto ev = cont::ContinuationEvaluator::create(d, cont::Target::inverse);
    benchmark::DoNotOptimize(
        cont::growth_scan(ev, {cont::Ray::log_spaced(std::numbers::pi, 0.1, 1e3, 61)}, opts));
  }
}
BENCHMARK(BM_GrowthScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_HeatSolveExact(benchmark::State& state) {
  pde::CauchyProblem cp;
  cp.P = pde::heat_operator();
  cp.m = seq::power_sum({Number(2), Number(1)});
  cp.N = static_cast<std::size_t>(state.range(0));
  cp.M = 3 * cp.N;
  cp.phi = {std::vector<Number>(cp.M + 1, Number(1))};
  for (auto _ : state) benchmark::DoNotOptimize(pde::solve_formal_exact(cp));
}
BENCHMARK(BM_HeatSolveExact)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
