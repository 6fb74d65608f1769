#include <benchmark/benchmark.h>

#include "equichar/charforms.hpp"
#include "equichar/skr.hpp"

using namespace equichar;

namespace {

SKRProfile worked() {
  SKRProfile p;
  p.phi = ScalarFunction::polynomial({0.5, 0.25});
  p.c_bar = -1.0;
  p.base_curvature = 2.0;
  p.tau_min = -0.5;
  return p;
}

void BM_ApplyGerm(benchmark::State& state) {
  const AnalyticGerm f = l_log_germ();
  const FormMatrix m = equivariant_curvature_at(worked(), -0.1);
  const SeriesOptions opts{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(apply_germ(f, m, opts));
}
BENCHMARK(BM_ApplyGerm)->Arg(8)->Arg(16)->Arg(32);

void BM_LFormGeneric(benchmark::State& state) {
  const SKRProfile p = worked();
  for (auto _ : state) benchmark::DoNotOptimize(l_form_generic(p, -0.2));
}
BENCHMARK(BM_LFormGeneric);

void BM_LFormClosed(benchmark::State& state) {
  const SKRProfile p = worked();
  for (auto _ : state) benchmark::DoNotOptimize(l_form_closed(p, -0.2));
}
BENCHMARK(BM_LFormClosed);

void BM_TransgressionDirect(benchmark::State& state) {
  const SKRProfile p = worked();
  const QuadratureSpec q{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(transgression_pullback_direct(p, 16, q));
}
BENCHMARK(BM_TransgressionDirect)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_TransgressionClosed(benchmark::State& state) {
  const SKRProfile p = worked();
  for (auto _ : state) benchmark::DoNotOptimize(transgression_pullback_closed(p, 16, {32}));
}
BENCHMARK(BM_TransgressionClosed)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
