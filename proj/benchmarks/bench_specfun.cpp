#include <benchmark/benchmark.h>

#include "bwp/specfun.hpp"

namespace {

using bwp::specfun::Complex;

void BM_Hyp2f1Series(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bwp::specfun::hyp2f1(Complex(1.0, 2.0), 0.5, 2.0, 0.25));
}
BENCHMARK(BM_Hyp2f1Series);

// Imaginary part of a selects the real segment, the deformed path or the Laguerre path.
void BM_Hyp2f1Euler(benchmark::State& state) {
    const Complex a(1.0, double(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bwp::specfun::hyp2f1(a, 0.5, 2.0, 0.5));
}
BENCHMARK(BM_Hyp2f1Euler)->Arg(10)->Arg(40)->Arg(200)->Arg(5000);

void BM_Hyp2f1Unit(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bwp::specfun::hyp2f1(Complex(1.0, 300.0), 0.5, 2.0, 1.0));
}
BENCHMARK(BM_Hyp2f1Unit);

void BM_LogGammaComplex(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bwp::specfun::log_gamma_complex(Complex(2.5, 130.0)));
}
BENCHMARK(BM_LogGammaComplex);

}  // namespace

BENCHMARK_MAIN();
