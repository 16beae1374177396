#include <benchmark/benchmark.h>

#include "eurlab/haar_sampler.hpp"
#include "eurlab/matrix_core.hpp"
#include "eurlab/state_minimizer.hpp"
#include "eurlab/submatrix_search.hpp"

using namespace eurlab;

static void BM_OperatorNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix g = sample_ginibre(RngStream{1, {}}, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(g));
}
BENCHMARK(BM_OperatorNorm)->Arg(2)->Arg(4)->Arg(8)->Arg(32)->Arg(128);

static void BM_HaarUnitary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(RngStream{2, {i++}}, n));
}
BENCHMARK(BM_HaarUnitary)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_ExactSProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix u = sample_haar_unitary(RngStream{3, {}}, n);
  for (auto _ : state) benchmark::DoNotOptimize(s_profile(u, SearchBudget{}));
}
BENCHMARK(BM_ExactSProfile)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_HeuristicSProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix u = sample_haar_unitary(RngStream{4, {}}, n);
  SearchBudget b;
  b.max_enumerations = 1;
  b.restarts = 4;
  b.max_swaps = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s_profile(u, b));
}
BENCHMARK(BM_HeuristicSProfile)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Interchange(benchmark::State& state) {
  const ComplexMatrix u = sample_haar_unitary(RngStream{5, {}}, 24);
  SearchBudget b;
  b.max_enumerations = 1;
  b.restarts = 2;
  b.max_swaps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_submatrix_norm(u, 4, 5, b));
}
BENCHMARK(BM_Interchange)->Arg(0)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Minimizer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix us[] = {ComplexMatrix::identity(n), sample_haar_unitary(RngStream{6, {}}, n)};
  MinimizeOptions opts;
  opts.restarts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_entropy_sum(us, opts));
}
BENCHMARK(BM_Minimizer)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
