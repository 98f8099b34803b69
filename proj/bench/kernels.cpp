#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "hypersum/fppoly.hpp"
#include "hypersum/instances.hpp"
#include "hypersum/mitm.hpp"

namespace {

std::vector<std::uint64_t> random_table(int n, std::uint64_t modulus) {
  hypersum::Rng rng(7);
  std::vector<std::uint64_t> table(std::size_t{1} << n);
  for (auto& v : table) v = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(modulus) - 1));
  return table;
}

std::vector<std::int64_t> random_weights(int n) {
  hypersum::Rng rng(8);
  std::vector<std::int64_t> w;
  for (int i = 0; i < n; ++i) w.push_back(rng.uniform(-1000, 1000));
  return w;
}

constexpr std::uint64_t kModulus = 3486784401ull;  // 3^20

void BM_ZetaSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto table = random_table(n, kModulus);
  for (auto _ : state) {
    auto work = table;
    hypersum::zeta_transform_serial(work, n, kModulus);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}

void BM_ZetaParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto table = random_table(n, kModulus);
  for (auto _ : state) {
    auto work = table;
    hypersum::zeta_transform(work, n, kModulus);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}

void BM_PartialSumsSerial(benchmark::State& state) {
  const auto w = random_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hypersum::enumerate_partial_sums_serial(w));
}

void BM_PartialSumsParallel(benchmark::State& state) {
  const auto w = random_weights(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hypersum::enumerate_partial_sums(w));
}

void BM_CountSubsetSum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<hypersum::Integer> w;
  for (auto v : random_weights(n)) w.emplace_back(static_cast<long>(v));
  for (auto _ : state) benchmark::DoNotOptimize(hypersum::count_subset_sum(w, hypersum::Integer(0)));
}

}  // namespace

BENCHMARK(BM_ZetaSerial)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZetaParallel)->DenseRange(16, 22, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialSumsSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialSumsParallel)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSubsetSum)->DenseRange(24, 36, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
