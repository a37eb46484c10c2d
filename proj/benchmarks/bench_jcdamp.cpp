#include <benchmark/benchmark.h>

#include "jcdamp/damping.hpp"
#include "jcdamp/liouvillian.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/observables.hpp"

using namespace jcdamp;

namespace {

const DressedSpectrum& spectrum() {
    static const DressedSpectrum s = dressed_spectrum(build_params(5.0, 0.2, 0.1));
    return s;
}
const RatePair kRates(0.002, 0.006);

void BM_DressedSpectrum(benchmark::State& state) {
    const ModelParams p = build_params(5.0, 0.2, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(dressed_spectrum(p));
}
BENCHMARK(BM_DressedSpectrum);

// 9x9 assembly plus the cached complex eigendecomposition
void BM_BuildLiouvillian(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(spectrum(), kRates));
}
BENCHMARK(BM_BuildLiouvillian);

void BM_Rk4Trajectory(benchmark::State& state) {
    const LiouvillianMatrix l = build_liouvillian(spectrum(), kRates);
    const Matrix3 rho0 = dressed_density(bare_state(BareState::e0), spectrum());
    const auto grid = uniform_grid(0.0, 100.0, static_cast<std::size_t>(state.range(0)) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(integrate(l, rho0, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4Trajectory)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EvolveAnalytic(benchmark::State& state) {
    const DampingBasisSet b = build_damping_bases(spectrum(), kRates);
    const ExpansionCoefficients m =
        expand_state(dressed_density(bare_state(BareState::e0), spectrum()), b);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_analytic(m, b, t));
        t += 0.01;
    }
}
BENCHMARK(BM_EvolveAnalytic);

void BM_DecoherenceFactor(benchmark::State& state) {
    const auto grid = uniform_grid(0.0, 200.0, 4001);
    const auto st = InitialQubitState::from_ratio(1.0, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(decoherence_factor(st, spectrum(), kRates, grid));
    state.SetItemsProcessed(state.iterations() * 4001);
}
BENCHMARK(BM_DecoherenceFactor);

}  // namespace
BENCHMARK_MAIN();
