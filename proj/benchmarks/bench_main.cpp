#include <landau/cmatrix.hpp>
#include <landau/eigenfunction.hpp>
#include <landau/family_solver.hpp>
#include <landau/fiber.hpp>
#include <landau/pendulum.hpp>
#include <landau/periodic_fn.hpp>
#include <landau/potential_chain.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace landau;

namespace {

PotentialChain chain_for(int m, double eps) {
  const auto b = make_bundle(m, 1.0);
  const auto sol = iterate_family(eps, b);
  return build_chain(sol.v, sol.B_eff);
}

void BM_SeriesMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> c(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = 1.0 / (1.0 + k * k);
  const PeriodicFn f(1.0, c);
  SeriesOptions opts;
  opts.max_order = 4 * n;
  for (auto _ : state) benchmark::DoNotOptimize(multiply(f, f, opts));
}
BENCHMARK(BM_SeriesMultiply)->Arg(16)->Arg(64)->Arg(256);

void BM_ExpRemainder(benchmark::State& state) {
  const PeriodicFn f = w_star(1.0) * 0.3 + PeriodicFn::cosine(1.0, 2, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(exp_remainder(f, 3));
}
BENCHMARK(BM_ExpRemainder);

void BM_PeriodIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(period_integral(1.0, 1.0));
}
BENCHMARK(BM_PeriodIntegral);

void BM_FamilyIteration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto b = make_bundle(m, 1.0);
  const double eps = m == 1 ? 0.1 : 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(iterate_family(eps, b));
}
BENCHMARK(BM_FamilyIteration)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BlochScan(benchmark::State& state) {
  const auto chain = chain_for(1, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(flat_band_scan(chain.V, chain.B, 1));
}
BENCHMARK(BM_BlochScan)->Unit(benchmark::kMillisecond);

void BM_Eigenfunction(benchmark::State& state) {
  const auto chain = chain_for(1, 0.1);
  EigenfunctionOptions opts;
  opts.levels = static_cast<int>(state.range(0));
  opts.channels = opts.levels / 4;
  opts.enforce = false;
  for (auto _ : state) benchmark::DoNotOptimize(build_eigenfunction(chain, 0.0, opts));
}
BENCHMARK(BM_Eigenfunction)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
