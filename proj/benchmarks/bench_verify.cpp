#include <benchmark/benchmark.h>

#include <memory>

#include "relalg/structure.hpp"
#include "relalg/xi.hpp"

using namespace relalg;

namespace {

void BM_VerifyFullAffine(benchmark::State& state) {
  const auto s = build_affine(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_full(s));
}
BENCHMARK(BM_VerifyFullAffine)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_VerifyAtomPairs(benchmark::State& state) {
  const auto s = build_affine(static_cast<unsigned>(state.range(0)));
  VerifyOptions opts;
  opts.strategy = VerifyStrategy::AtomPairs;
  for (auto _ : state) benchmark::DoNotOptimize(verify_full(s, opts));
}
BENCHMARK(BM_VerifyAtomPairs)->Arg(7)->Arg(11)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_VerifyWeakPower(benchmark::State& state) {
  const auto s = build_power(build_affine(3), 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_weak(s));
}
BENCHMARK(BM_VerifyWeakPower)->Unit(benchmark::kMillisecond);

// Fast check against the generic verifier on the same xi structures.
void BM_CheckXiFast(benchmark::State& state) {
  auto theta = std::make_shared<const LabeledStructure>(
      build_power(build_affine(3), static_cast<unsigned>(state.range(0))));
  const auto xi = build_xi(theta, 1, std::uint64_t{7});
  for (auto _ : state) benchmark::DoNotOptimize(check_xi_fast(xi));
}
BENCHMARK(BM_CheckXiFast)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerifyWeakXi(benchmark::State& state) {
  auto theta = std::make_shared<const LabeledStructure>(
      build_power(build_affine(3), static_cast<unsigned>(state.range(0))));
  const auto xi = build_xi(theta, 1, std::uint64_t{7});
  for (auto _ : state) benchmark::DoNotOptimize(verify_weak(xi));
}
BENCHMARK(BM_VerifyWeakXi)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
