#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mec/certify.hpp"
#include "mec/generate.hpp"
#include "mec/greedy.hpp"
#include "mec/oracle.hpp"

namespace {

std::vector<mec::Marginal> instance(benchmark::State& state) {
  return mec::random_dirichlet_marginals(
      static_cast<std::size_t>(state.range(1)),
      static_cast<std::size_t>(state.range(0)), 1.0, 12345);
}

void BM_Greedy(benchmark::State& state) {
  const auto ms = instance(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mec::greedy_coupling(ms));
  }
  state.SetComplexityN(state.range(0) * state.range(1));
}

void BM_TwoPhase(benchmark::State& state) {
  const auto ms = instance(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mec::greedy_coupling_two_phase(ms));
  }
  state.SetComplexityN(state.range(0) * state.range(1));
}

void BM_CertifyLeastSquares(benchmark::State& state) {
  const auto ms = instance(state);
  const auto r = mec::greedy_coupling(ms);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mec::evaluate_certificate(
        r.coupling, r.trace, mec::CertifyMethod::kLeastSquares));
  }
}

void BM_CertifyBackSubstitution(benchmark::State& state) {
  const auto ms = instance(state);
  const auto r = mec::greedy_coupling(ms);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mec::evaluate_certificate(
        r.coupling, r.trace, mec::CertifyMethod::kBackSubstitution));
  }
}

void BM_ExactTwoVariable(benchmark::State& state) {
  const auto ms = instance(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mec::exact_min_entropy_2var(ms[0], ms[1]));
  }
}

}  // namespace

BENCHMARK(BM_Greedy)
    ->ArgsProduct({{8, 64, 512, 4096}, {2, 4, 16}})
    ->Complexity();
BENCHMARK(BM_TwoPhase)
    ->ArgsProduct({{8, 64, 512, 4096}, {2, 4, 16}})
    ->Complexity();
BENCHMARK(BM_CertifyLeastSquares)->ArgsProduct({{4, 16, 32}, {2, 4}});
BENCHMARK(BM_CertifyBackSubstitution)->ArgsProduct({{4, 16, 32, 256}, {2, 4}});
BENCHMARK(BM_ExactTwoVariable)->ArgsProduct({{2, 3, 4, 5}, {2}});

BENCHMARK_MAIN();
