#include <benchmark/benchmark.h>

#include "chainlattice/chains.hpp"
#include "chainlattice/scd.hpp"
#include "chainlattice/search.hpp"
#include "chainlattice/supersaturation.hpp"

using namespace chainlattice;

static void BM_CountChainsFull(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    const Family P = Family::full(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_k_chains(P, 3));
    }
}
BENCHMARK(BM_CountChainsFull)->DenseRange(8, 16, 4);

static void BM_CountChainsCentered(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    const Family G = centered_family(n, sigma(n, 3) + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_k_chains(G, 4));
    }
}
BENCHMARK(BM_CountChainsCentered)->Arg(12)->Arg(16);

static void BM_DbtkScd(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dbtk_scd(n));
    }
}
BENCHMARK(BM_DbtkScd)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_ChainThrough(benchmark::State& state)
{
    SubsetCode A = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chain_through(20, A));
        A = (A * 2654435761u + 1) & full_set(20);
    }
}
BENCHMARK(BM_ChainThrough);

static void BM_WeightedSum(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    const Family G = centered_family(n, sigma(n, 2) + 3);
    const StepVector a({1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(weighted_sum(G, a));
    }
}
BENCHMARK(BM_WeightedSum)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_StepProfile(benchmark::State& state)
{
    const Family P = Family::full(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scaled_step_profile(P));
    }
}
BENCHMARK(BM_StepProfile)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveSweepN4(benchmark::State& state)
{
    const auto k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_conjecture_range(4, k));
    }
}
BENCHMARK(BM_ExhaustiveSweepN4)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_McWeight(benchmark::State& state)
{
    const Chain c = Chain::parse("1,2,3 < 1,2,3,4,5", 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_weight(c, 65536, 1, 1));
    }
}
BENCHMARK(BM_McWeight)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
