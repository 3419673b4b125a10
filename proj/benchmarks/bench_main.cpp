#include <benchmark/benchmark.h>

#include "tower2/group2.hpp"
#include "tower2/params.hpp"
#include "tower2/predict.hpp"
#include "tower2/quadfield.hpp"

using namespace tower2;

static void BM_Scan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(scan(state.range(0), 1));
}
BENCHMARK(BM_Scan)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void BM_ImaginaryClassGroup(benchmark::State& state) {
    const std::int64_t D = -state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(class_group_imaginary(D));
}
// arg: |D| for fundamental discriminants D
BENCHMARK(BM_ImaginaryClassGroup)->Arg(455)->Arg(45955)->Arg(199992);

static void BM_FundamentalUnit(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fundamental_unit(state.range(0)));
}
BENCHMARK(BM_FundamentalUnit)->Arg(455)->Arg(49795);

// arg: m, with n = 1 and N = -1
static void BM_BuildGroup(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_presented_group(m, 1, -1));
}
BENCHMARK(BM_BuildGroup)->DenseRange(2, 8, 2);

static void BM_Fingerprint(benchmark::State& state) {
    const auto g = build_presented_group(static_cast<int>(state.range(0)), 1, -1);
    for (auto _ : state) benchmark::DoNotOptimize(fingerprint(g));
}
BENCHMARK(BM_Fingerprint)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_CosetEnumeration(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto rels = presented_group_relators(m, 1, -1);
    for (auto _ : state) benchmark::DoNotOptimize(coset_enumerate(3, rels, {"rho", "sigma", "tau"}));
}
BENCHMARK(BM_CosetEnumeration)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_Consistency(benchmark::State& state) {
    const auto inv = compute_invariants(validate_triple(5, 13, 7));
    for (auto _ : state) benchmark::DoNotOptimize(run_consistency(inv));
}
BENCHMARK(BM_Consistency)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
