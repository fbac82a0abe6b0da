#include <benchmark/benchmark.h>

#include "bwp/model.hpp"
#include "bwp/optimize.hpp"

namespace {

const bwp::NetworkParams kParams{0.0584, 4.0, 0.1, 1.0};

void BM_MetaExact(benchmark::State& state) {
    const bwp::PartitionScheme s{bwp::Mode::AdaptiveSir, int(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(bwp::model::meta_distribution_exact(kParams, s, 0.99));
}
BENCHMARK(BM_MetaExact)->Arg(1)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MetaFullInversion(benchmark::State& state) {
    bwp::MetaControl ctl;
    ctl.split_large_jumps = false;
    const bwp::PartitionScheme s{bwp::Mode::AdaptiveSir, 2};
    for (auto _ : state) benchmark::DoNotOptimize(bwp::model::meta_distribution_exact(kParams, s, 0.99, ctl));
}
BENCHMARK(BM_MetaFullInversion)->Unit(benchmark::kMillisecond);

void BM_OptimalNDelay(benchmark::State& state) {
    const bwp::NetworkParams p{1.0, 3.0, 0.25, 1.0};
    const auto mode = state.range(0) == 0 ? bwp::Mode::AdaptiveSir : bwp::Mode::AdaptiveTime;
    for (auto _ : state) benchmark::DoNotOptimize(bwp::optimize::optimal_n_delay(p, mode));
}
BENCHMARK(BM_OptimalNDelay)->Arg(0)->Arg(1);

}  // namespace
