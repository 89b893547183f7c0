#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lvlab/apps.hpp"
#include "lvlab/characters.hpp"
#include "lvlab/kernel.hpp"
#include "lvlab/large_values.hpp"
#include "lvlab/lfunc.hpp"
#include "lvlab/poly.hpp"
#include "lvlab/spectral.hpp"

using namespace lvlab;

static void BM_KernelRealLine(benchmark::State& st) {
  const double t = double(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(h_hat(t, 0.0));
}
BENCHMARK(BM_KernelRealLine)->Arg(0)->Arg(100)->Arg(1000);

static void BM_KernelContour(benchmark::State& st) {
  const double xi = double(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(h_hat(10.0, xi));
}
BENCHMARK(BM_KernelContour)->Arg(100)->Arg(10000);

static void BM_EvalGrid(benchmark::State& st) {
  const auto g = build_group(5);
  PolySpec s;
  s.N = u64(st.range(0));
  s.source = CoeffSource::random_unimodular;
  s.smoothed = true;
  std::vector<double> grid;
  for (int k = 0; k < 400; ++k) grid.push_back(-100 + 0.5 * k);
  const DirichletPoly p(s);
  for (auto _ : st) benchmark::DoNotOptimize(eval_grid(p, g.characters, grid));
  st.SetItemsProcessed(st.iterations() * std::int64_t(grid.size() * g.characters.size()));
}
BENCHMARK(BM_EvalGrid)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Energy(benchmark::State& st) {
  const auto W = random_point_set(5, std::size_t(st.range(0)), 200, 1.0, 1);
  for (auto _ : st) benchmark::DoNotOptimize(energy(W));
}
BENCHMARK(BM_Energy)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_Gram(benchmark::State& st) {
  const auto W = random_point_set(5, std::size_t(st.range(0)), 100, 1.0, 2);
  for (auto _ : st) benchmark::DoNotOptimize(build_gram(W, 2000));
}
BENCHMARK(BM_Gram)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_LValue(benchmark::State& st) {
  const auto g = build_group(7);
  const double t = double(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(l_value({0.5, t}, g.characters[1]));
}
BENCHMARK(BM_LValue)->Arg(10)->Arg(500);

static void BM_LeastPrimeTable(benchmark::State& st) {
  const u64 D = u64(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ap_table(D));
}
BENCHMARK(BM_LeastPrimeTable)->Arg(243)->Arg(2187)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
