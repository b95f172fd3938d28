// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "hblab/function.hpp"
#include "hblab/kernels.hpp"

using namespace hblab;

namespace {

const Function& workload() {
  static const Function f = Function::rational(Poly{1.0, -0.5, 0.25, 0.125}, Poly{2.0, 1.0});
  return f;
}

void sample_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sample(workload(), n, 1.0));
}

void sample_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::sample(workload(), n, 1.0));
}

void mean_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::mean([](cplx z) { return std::norm(workload()(z)); }, n, 1.0));
}

void mean_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(kernels::serial::mean([](cplx z) { return std::norm(workload()(z)); }, n, 1.0));
}

void max_abs_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::max_abs(workload(), n, 1.0));
}

void max_abs_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::max_abs(workload(), n, 1.0));
}

// Gram of monomials weighted by |f|^2, each entry by a 4096-point quadrature.
cplx weighted_inner(std::size_t j, std::size_t k) {
  return kernels::serial::mean(
      [&](cplx z) { return std::pow(z, static_cast<int>(j)) * std::conj(std::pow(z, static_cast<int>(k))) * std::norm(workload()(z)); },
      4096, 1.0);
}

void gram_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::gram(n, weighted_inner));
}

void gram_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::gram(n, weighted_inner));
}

void dft_fast(benchmark::State& st) {
  const auto s = kernels::serial::sample(workload(), static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::dft(s));
}

void dft_reference(benchmark::State& st) {
  const auto s = kernels::serial::sample(workload(), static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::dft_direct(s));
}

}  // namespace

BENCHMARK(sample_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(sample_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(mean_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(mean_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(max_abs_serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(max_abs_parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(gram_serial)->Arg(8)->Arg(32)->UseRealTime();
BENCHMARK(gram_parallel)->Arg(8)->Arg(32)->UseRealTime();
BENCHMARK(dft_reference)->Arg(256)->Arg(1024)->UseRealTime();
BENCHMARK(dft_fast)->Arg(256)->Arg(1024)->UseRealTime();

BENCHMARK_MAIN();
