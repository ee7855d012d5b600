#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wws/kernels.hpp"
#include "wws/measures.hpp"
#include "wws/ot_exact.hpp"
#include "wws/wavelet_core.hpp"

using namespace wws;

namespace {

using AnalysisFn = void (*)(std::span<const double>, std::int64_t, std::span<const double>,
                            std::span<const double>, std::span<double>, std::span<double>, std::int64_t);
using SynthesisFn = void (*)(std::span<const double>, std::span<const double>, std::int64_t,
                             std::span<const double>, std::span<const double>, std::span<double>,
                             std::int64_t);

std::vector<double> signal(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

void run_analysis(benchmark::State& state, AnalysisFn fn) {
  const WaveletSystem system = build_wavelet_system("db10");
  const auto x = signal(static_cast<std::size_t>(state.range(0)));
  const auto out = kernels::zero_mode_output({0, x.size()}, system.filter_length());
  std::vector<double> approx(out.length);
  std::vector<double> detail(out.length);
  for (auto _ : state) {
    fn(x, 0, system.lowpass(), system.highpass(), approx, detail, out.offset);
    benchmark::DoNotOptimize(approx.data());
    benchmark::DoNotOptimize(detail.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void run_synthesis(benchmark::State& state, SynthesisFn fn) {
  const WaveletSystem system = build_wavelet_system("db10");
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto out = kernels::zero_mode_output({0, n}, system.filter_length());
  const auto approx = signal(out.length);
  const auto detail = signal(out.length);
  std::vector<double> x(n);
  for (auto _ : state) {
    fn(approx, detail, out.offset, system.lowpass(), system.highpass(), x, 0);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AnalysisReference(benchmark::State& state) { run_analysis(state, kernels::reference::analysis_zero); }
void BM_AnalysisParallel(benchmark::State& state) { run_analysis(state, kernels::analysis_zero); }
void BM_SynthesisReference(benchmark::State& state) { run_synthesis(state, kernels::reference::synthesis_zero); }
void BM_SynthesisParallel(benchmark::State& state) { run_synthesis(state, kernels::synthesis_zero); }

void BM_Decompose(benchmark::State& state) {
  const WaveletSystem system = build_wavelet_system("db10");
  const auto x = signal(std::size_t{1} << 18);
  for (auto _ : state) {
    auto pyramid = dwt_decompose(x, 7, system, 18, ExtensionMode::zero);
    benchmark::DoNotOptimize(pyramid.approx.values.data());
  }
}

void run_solver(benchmark::State& state, PivotRule rule) {
  const auto points = static_cast<std::size_t>(state.range(0));
  const DiscreteMeasure mu = discretize(uniform_density(0.0, 1.0), {0.0, 3.0}, points);
  const DiscreteMeasure nu = discretize(bump_density(2.0, 0.5), {0.0, 3.0}, points);
  for (auto _ : state) benchmark::DoNotOptimize(exact_ws(mu, nu, 0.5, rule).cost);
}

void BM_SolverBlockSearch(benchmark::State& state) { run_solver(state, PivotRule::block_search); }
void BM_SolverBland(benchmark::State& state) { run_solver(state, PivotRule::bland); }

}  // namespace

BENCHMARK(BM_AnalysisReference)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_AnalysisParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_SynthesisReference)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_SynthesisParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolverBlockSearch)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolverBland)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
