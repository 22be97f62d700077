#include <benchmark/benchmark.h>

#include "netctl/cavity.hpp"
#include "netctl/collective.hpp"
#include "netctl/energy.hpp"
#include "netctl/exact.hpp"
#include "netctl/generators.hpp"
#include "netctl/observability.hpp"
#include "netctl/structural.hpp"

using namespace netctl;

static void BM_MaximumMatching(benchmark::State& st) {
  Rng rng = make_rng(1);
  DiGraph g = er_digraph(static_cast<int>(st.range(0)), 6.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(min_driver_set(g).n_d);
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_MaximumMatching)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

static void BM_Scc(benchmark::State& st) {
  Rng rng = make_rng(2);
  DiGraph g = er_digraph(static_cast<int>(st.range(0)), 3.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(scc_decompose(g).count());
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Scc)->RangeMultiplier(10)->Range(1000, 100000)->Complexity();

static void BM_DirectedCore(benchmark::State& st) {
  Rng rng = make_rng(3);
  DiGraph g = er_digraph(static_cast<int>(st.range(0)), 6.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(directed_core(g).n_core);
}
BENCHMARK(BM_DirectedCore)->Arg(10000)->Arg(100000);

static void BM_LinkClasses(benchmark::State& st) {
  Rng rng = make_rng(4);
  DiGraph g = er_digraph(static_cast<int>(st.range(0)), 4.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(classify_links(g).size());
}
BENCHMARK(BM_LinkClasses)->Arg(1000)->Arg(10000);

static void BM_CavityEr(benchmark::State& st) {
  auto d = DegreeDistribution::poisson(4.0);
  for (auto _ : st) benchmark::DoNotOptimize(solve_cavity(d, d, 8.0).n_d);
}
BENCHMARK(BM_CavityEr);

static void BM_CavityStatic(benchmark::State& st) {
  auto d = DegreeDistribution::sf_static(4.0, 2.5);
  for (auto _ : st) benchmark::DoNotOptimize(solve_cavity(d, d, 4.0).n_d);
}
BENCHMARK(BM_CavityStatic)->Unit(benchmark::kMillisecond);

static void BM_Pbh(benchmark::State& st) {
  Rng rng = make_rng(5);
  Mat A = adjacency_matrix(er_ungraph(static_cast<int>(st.range(0)), 4.0, rng));
  for (auto _ : st) benchmark::DoNotOptimize(pbh_min_drivers(A).n_d);
}
BENCHMARK(BM_Pbh)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Gramian(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  DenseSystem s;
  s.A = -Mat::Identity(n, n);
  for (int i = 1; i < n; ++i) s.A(i, i - 1) = 1;
  s.B = Mat::Zero(n, 1);
  s.B(0, 0) = 1;
  for (auto _ : st) benchmark::DoNotOptimize(gramian(s, 1.0).cond);
}
BENCHMARK(BM_Gramian)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_Mds(benchmark::State& st) {
  Rng rng = make_rng(6);
  UnGraph g = er_ungraph(static_cast<int>(st.range(0)), 2.0, rng);
  for (auto _ : st) benchmark::DoNotOptimize(mds_solve(g).nodes.size());
}
BENCHMARK(BM_Mds)->Arg(10000)->Arg(100000);

static void BM_VicsekStep(benchmark::State& st) {
  VicsekParams p;
  p.n = static_cast<int>(st.range(0));
  VicsekState s = vicsek_init(p);
  for (auto _ : st) s = vicsek_step(s);
}
BENCHMARK(BM_VicsekStep)->Arg(300)->Arg(3000);
BENCHMARK_MAIN();
