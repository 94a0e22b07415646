#include <benchmark/benchmark.h>

#include "satotate/coefficients.hpp"
#include "satotate/primes.hpp"
#include "satotate/sato_tate.hpp"
#include "satotate/sympower.hpp"

using namespace satotate;

namespace {

const WeierstrassCurve k11a1{0, -1, 1, -10, -20};

void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes_up_to(limit));
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_PointCount(benchmark::State& state) {
  const auto primes = primes_up_to(static_cast<std::uint64_t>(state.range(0)));
  const std::uint64_t p = primes.back();
  const bool fast = state.range(1) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fast ? ap_elliptic_fast(k11a1, p) : ap_elliptic(k11a1, p));
  state.SetLabel(fast ? "bsgs" : "naive");
}
BENCHMARK(BM_PointCount)->Args({10'000, 0})->Args({10'000, 1})->Args({1'000'000, 0})->Args({1'000'000, 1});

void BM_TauTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tau_table(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TauTable)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_PhiSum(benchmark::State& state) {
  static const AngleTable angles = AngleTable::from_coefficients(build_coefficients(
      NewformSpec::elliptic_curve(k11a1, 11, "11a1"), 200'000));
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_sum(200'000, n, angles));
}
BENCHMARK(BM_PhiSum)->Arg(1)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
