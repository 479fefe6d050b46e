#include <benchmark/benchmark.h>

#include <random>

#include "azumaya/kernels.hpp"
#include "azumaya/suites.hpp"

using namespace azumaya;

namespace {

std::vector<Vec> random_rows(std::size_t n, Int p) {
  std::mt19937_64 rng(1);
  std::vector<Vec> m(n, Vec(n));
  for (auto& row : m)
    for (auto& v : row) v = static_cast<Int>(rng() % static_cast<std::uint64_t>(p));
  return m;
}

void BM_RankModPrime(benchmark::State& st) {
  const auto m = random_rows(static_cast<std::size_t>(st.range(0)), 5);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::rank_mod_prime(m, 5));
}

void BM_RankModPrimeSerial(benchmark::State& st) {
  const auto m = random_rows(static_cast<std::size_t>(st.range(0)), 5);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::rank_mod_prime_serial(m, 5));
}

// Full s_4 sweep over M_2(F_2): 65536 tuples, no match, so every index is visited.
kernels::IndexPredicate al_predicate() {
  static const auto a = matrix_algebra(FiniteCommRing::zmod(2), 2);
  return [](std::uint64_t t) {
    std::vector<Vec> xs;
    for (int k = 0; k < 4; ++k) xs.push_back(a->element_at(static_cast<Int>((t >> (4 * k)) & 15)));
    return !a->is_zero(evaluate_standard(a, xs));
  };
}

void BM_AlSweep(benchmark::State& st) {
  const auto pred = al_predicate();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::first_match(65536, pred));
}

void BM_AlSweepSerial(benchmark::State& st) {
  const auto pred = al_predicate();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::first_match_serial(65536, pred));
}

const Corpus& corpus() {
  static const Corpus c = build_corpus(1);
  return c;
}

void BM_CorpusIsoSweep(benchmark::State& st) {
  const auto& c = corpus();
  for (auto _ : st) {
    std::vector<Status> out(c.homs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < c.homs.size(); ++i)
      out[i] = isomorphism_check(c.homs[i], c.facts_of(c.homs[i].source), c.facts_of(c.homs[i].target)).status;
    benchmark::DoNotOptimize(out);
  }
}

void BM_CorpusIsoSweepSerial(benchmark::State& st) {
  const auto& c = corpus();
  for (auto _ : st) {
    std::vector<Status> out(c.homs.size());
    for (std::size_t i = 0; i < c.homs.size(); ++i)
      out[i] = isomorphism_check(c.homs[i], c.facts_of(c.homs[i].source), c.facts_of(c.homs[i].target)).status;
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_RankModPrime)->Arg(128)->Arg(625)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RankModPrimeSerial)->Arg(128)->Arg(625)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AlSweep)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AlSweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CorpusIsoSweep)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CorpusIsoSweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
