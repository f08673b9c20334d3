#include <benchmark/benchmark.h>

#include "relalg/bit_matrix.hpp"
#include "relalg/lpn.hpp"
#include "relalg/splitmix.hpp"

using namespace relalg;

namespace {

BitMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BitMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (rng.below(8) == 0) m.set(r, c);
    }
  }
  return m;
}

void BM_BitMatrixProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const BitMatrix a = random_matrix(n, 1);
  const BitMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a.product(b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BitMatrixProduct)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Compose(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0));
  const auto alg = build_lpn({p, (p + 1) / 2});
  SplitMix64 rng(3);
  std::vector<Element> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(alg.element(rng.next() & alg.universe()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alg.compose(xs[i & 255], xs[(i * 7 + 1) & 255]));
    ++i;
  }
}
BENCHMARK(BM_Compose)->Arg(3)->Arg(9)->Arg(17)->Arg(31);

void BM_CheckAxioms(benchmark::State& state) {
  const auto alg = build_lpn({static_cast<unsigned>(state.range(0)), 2});
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(alg));
}
BENCHMARK(BM_CheckAxioms)->Arg(3)->Arg(7)->Arg(13);

}  // namespace
