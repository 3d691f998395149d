// Serial reference vs OpenMP kernel for each parallel hot spot.

#include "childstat/child_set.hpp"
#include "childstat/lagrange.hpp"
#include "childstat/oracle.hpp"
#include "childstat/poly.hpp"

#include <benchmark/benchmark.h>

using namespace childstat;

namespace {

const ChildSet kSet{0, 1, 2, 3};

void BM_PolyMulSerial(benchmark::State& state) {
  auto deg = static_cast<std::size_t>(state.range(0));
  DensePolynomial a = poly_pow_coeffs(kSet.phi(), 400, deg);
  for (auto _ : state) benchmark::DoNotOptimize(poly_mul_trunc_serial(a, a, deg));
}

void BM_PolyMulParallel(benchmark::State& state) {
  auto deg = static_cast<std::size_t>(state.range(0));
  DensePolynomial a = poly_pow_coeffs(kSet.phi(), 400, deg);
  for (auto _ : state) benchmark::DoNotOptimize(poly_mul_trunc(a, a, deg));
}

void BM_PowerRecurrence(benchmark::State& state) {
  auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_pow_coeffs(kSet.phi(), n, n - 1, PowerStrategy::CoefficientRecurrence));
  }
}

void BM_PowerSquaring(benchmark::State& state) {
  auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_pow_coeffs(kSet.phi(), n, n - 1, PowerStrategy::BinaryExponentiation));
  }
}

void BM_NumeratorSequenceSerial(benchmark::State& state) {
  auto n_max = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerator_sequence_serial(kSet, 0, 3U, 2, 2, n_max));
}

void BM_NumeratorSequenceParallel(benchmark::State& state) {
  auto n_max = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerator_sequence(kSet, 0, 3U, 2, 2, n_max));
}

void BM_TallySerial(benchmark::State& state) {
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tally_profiles_serial(kSet, n));
}

void BM_TallyParallel(benchmark::State& state) {
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tally_profiles(kSet, n));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_moment_serial(kSet, 30, 0, 1U, 1, 1, 1 << 16, 1));
  }
}

void BM_MonteCarloParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_moment(kSet, 30, 0, 1U, 1, 1, 1 << 16, 1));
  }
}

}  // namespace

BENCHMARK(BM_PolyMulSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_PolyMulParallel)->Arg(500)->Arg(2000);
BENCHMARK(BM_PowerRecurrence)->Arg(500)->Arg(2000);
BENCHMARK(BM_PowerSquaring)->Arg(500)->Arg(2000);
BENCHMARK(BM_NumeratorSequenceSerial)->Arg(100)->Arg(300);
BENCHMARK(BM_NumeratorSequenceParallel)->Arg(100)->Arg(300);
BENCHMARK(BM_TallySerial)->Arg(10)->Arg(12);
BENCHMARK(BM_TallyParallel)->Arg(10)->Arg(12);
BENCHMARK(BM_MonteCarloSerial);
BENCHMARK(BM_MonteCarloParallel);

BENCHMARK_MAIN();
