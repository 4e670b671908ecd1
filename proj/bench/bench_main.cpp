// Serial reference against the OpenMP kernels on fixed random instances.
// The second benchmark argument is the thread count.

#include <benchmark/benchmark.h>

#include "mmspace/box.hpp"
#include "mmspace/gh.hpp"
#include "mmspace/moduli.hpp"
#include "support/generators.hpp"

namespace {

using namespace mmspace;
namespace gen = mmspace::testing;

FiniteMetricSpace metric(std::size_t n, std::uint64_t seed) {
  gen::Rng rng(seed);
  return gen::random_metric(rng, n);
}

FiniteMMSpace mm(std::size_t n, std::uint64_t seed) {
  gen::Rng rng(seed);
  return gen::random_mm_space(rng, n);
}

void BM_GhSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto X = metric(n, 1), Y = metric(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::gh_exact(X, Y));
}

void BM_GhParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto X = metric(n, 1), Y = metric(n, 2);
  GhOptions o;
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gh_exact(X, Y, o));
}

void BM_BoxSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto X = mm(n, 3), Y = mm(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(serial::box_exact(X, Y));
}

void BM_BoxParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto X = mm(n, 3), Y = mm(n, 4);
  BoxOptions o;
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(box_exact(X, Y, o));
}

void BM_CanonicalSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = metric_vector_of(metric(n, 5));
  for (auto _ : state) benchmark::DoNotOptimize(serial::canonical_form(r, std::nullopt));
}

void BM_CanonicalParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = metric_vector_of(metric(n, 5));
  CanonicalOptions o;
  o.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(r, o));
}

BENCHMARK(BM_GhSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GhParallel)->ArgsProduct({{3, 4, 5}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxSerial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoxParallel)->ArgsProduct({{3, 4, 5}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalSerial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalParallel)->ArgsProduct({{6, 7}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
