#include <benchmark/benchmark.h>

#include <cmath>

#include "obslab/gram.hpp"
#include "obslab/observability.hpp"
#include "obslab/oracle.hpp"
#include "obslab/specfun.hpp"
#include "obslab/spectrum.hpp"

namespace {

using namespace obslab;

void BM_AiryEval(benchmark::State& state) {
  const double span = static_cast<double>(state.range(0));
  double x = -span;
  for (auto _ : state) {
    benchmark::DoNotOptimize(airy_eval(x));
    x += 0.37;
    if (x > span) x = -span;
  }
}
BENCHMARK(BM_AiryEval)->Arg(4)->Arg(8)->Arg(300);

void BM_AiryKernel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(airy_kernel(-57.3, -58.1));
}
BENCHMARK(BM_AiryKernel);

void BM_EigenvalueLookup(benchmark::State& state) {
  reserve_spectrum(4000);
  std::size_t k = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalue(k));
    k = k % 4000 + 1;
  }
}
BENCHMARK(BM_EigenvalueLookup);

void BM_ClusterGramQuadrature(benchmark::State& state) {
  const SetSpec e = parse_set_spec("athin-comp:alpha=1.5");
  const std::size_t n = index_nearest(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cluster_gram(e, n, 1.5, 1.0));
}
BENCHMARK(BM_ClusterGramQuadrature)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_TimeGramian(benchmark::State& state) {
  const SetSpec e = parse_set_spec("athin-comp:alpha=1.5");
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(observability_constant_estimate(e, 1.0, k));
}
BENCHMARK(BM_TimeGramian)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_FDEigs(benchmark::State& state) {
  const FDOperator op = fd_build(60.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(fd_eigs(op, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FDEigs)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ResolventPoint(benchmark::State& state) {
  const FDOperator op = fd_build(60.0, 0.01);
  const IntervalUnion e = parse_set_spec("athin-comp:alpha=1.5").generate(60.0);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_check(op, e, {2.8}, 1.5));
}
BENCHMARK(BM_ResolventPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
