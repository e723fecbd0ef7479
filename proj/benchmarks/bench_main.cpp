#include <benchmark/benchmark.h>

#include "hbl/cech.hpp"
#include "hbl/monad.hpp"
#include "hbl/rationality.hpp"

using namespace hbl;

static void BM_CechGrid(benchmark::State& state)
{
    Surface s(static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (std::int64_t a = -8; a <= 8; ++a)
            for (std::int64_t b = -8; b <= 8; ++b)
                benchmark::DoNotOptimize(cech_line_cohomology(s, {a, b}));
}
BENCHMARK(BM_CechGrid)->DenseRange(0, 4);

static void BM_SampleMonad(benchmark::State& state)
{
    const int e = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_monad(e, FieldSpec::prime(kDefaultPrime), seed++));
}
BENCHMARK(BM_SampleMonad)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_IsMonad(benchmark::State& state)
{
    auto m = sample_monad(static_cast<int>(state.range(0)), FieldSpec::prime(kDefaultPrime), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_monad(m));
}
BENCHMARK(BM_IsMonad)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_Hypercohomology(benchmark::State& state)
{
    const int e = static_cast<int>(state.range(0));
    auto m = sample_monad(e, FieldSpec::prime(kDefaultPrime), 1);
    auto c = m.complex();
    Surface s(e);
    for (auto _ : state)
        benchmark::DoNotOptimize(bundle_cohomology(s, c, {-1, 0}, m.field));
}
BENCHMARK(BM_Hypercohomology)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state)
{
    auto m = sample_monad(static_cast<int>(state.range(0)), FieldSpec::prime(kDefaultPrime), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(m));
}
BENCHMARK(BM_Classify)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_BilinearKernel(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(bilinear_kernel(static_cast<int>(state.range(0)), FieldSpec::prime(kDefaultPrime)));
}
BENCHMARK(BM_BilinearKernel)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
