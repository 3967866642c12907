#include "eqlab/designkit.hpp"
#include "eqlab/linesys.hpp"
#include "eqlab/paramscan.hpp"
#include "eqlab/twograph.hpp"

#include <benchmark/benchmark.h>

using namespace eqlab;

namespace {

const LineSystem& lines276() {
    static const LineSystem L = construct_augmented(golay_heptads()).lines;
    return L;
}

void BM_Construct276(benchmark::State& st) {
    const BlockSet bs = golay_heptads();
    for (auto _ : st) benchmark::DoNotOptimize(construct_augmented(bs));
}
BENCHMARK(BM_Construct276)->Unit(benchmark::kMillisecond);

void BM_Gram28(benchmark::State& st) {
    const LineSystem L = construct_omega(pair_blockset(8));
    for (auto _ : st) benchmark::DoNotOptimize(gram_matrix(L.vectors()).rank());
}
BENCHMARK(BM_Gram28)->Unit(benchmark::kMicrosecond);

void BM_Regularity276(benchmark::State& st) {
    const TwoGraph t = from_lines(lines276());
    for (auto _ : st) benchmark::DoNotOptimize(regularity(t));
}
BENCHMARK(BM_Regularity276)->Unit(benchmark::kMillisecond);

void BM_Incoherent276(benchmark::State& st) {
    const TwoGraph t = from_lines(lines276());
    for (auto _ : st) benchmark::DoNotOptimize(find_max_incoherent(t, 23));
}
BENCHMARK(BM_Incoherent276)->Unit(benchmark::kMillisecond);

void BM_Elliptic(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(elliptic_point_search(st.range(0)));
}
BENCHMARK(BM_Elliptic)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(scan(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Scan)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
