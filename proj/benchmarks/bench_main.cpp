#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "effortwave/body_model.hpp"
#include "effortwave/dynamics.hpp"
#include "effortwave/haptics.hpp"
#include "effortwave/savgol.hpp"

namespace {

using namespace effortwave;

void BM_SavGolCoefficients(benchmark::State& state) {
    const SavGolSpec spec{static_cast<int>(state.range(0)), 3, 2};
    for (auto _ : state) benchmark::DoNotOptimize(savgol_coefficients(spec));
}
BENCHMARK(BM_SavGolCoefficients)->Arg(5)->Arg(9)->Arg(21)->Arg(51);

void BM_SmoothDifferentiate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Vec3Series x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / 60.0;
        x[i] = Vec3(std::sin(t), std::cos(2 * t), 0.1 * t);
    }
    for (auto _ : state) benchmark::DoNotOptimize(smooth_differentiate(x, 1.0 / 60.0, {9, 3, 2}));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SmoothDifferentiate)->Arg(600)->Arg(6000);

void BM_InverseDynamics(benchmark::State& state) {
    const auto& m = default_body_model();
    const auto n = static_cast<std::size_t>(state.range(0));
    SegmentCogTrace cogs;
    KinematicsTrace k{{0, n}, {}};
    for (std::size_t f = 0; f < n; ++f) cogs.times.push_back(static_cast<double>(f) / 60.0);
    for (std::size_t s = 0; s < m.size(); ++s) {
        cogs.positions.emplace_back(n, Vec3::Zero());
        Vec3Series a(n);
        for (std::size_t f = 0; f < n; ++f) a[f] = Vec3(0.1 * static_cast<double>(s), std::sin(0.01 * static_cast<double>(f)), 0.0);
        k.accelerations.push_back(std::move(a));
    }
    for (auto _ : state) benchmark::DoNotOptimize(inverse_dynamics_tree(cogs, k, m, 60.0, 9.81));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_InverseDynamics)->Arg(600)->Arg(6000);

void BM_SynthesizeAm(benchmark::State& state) {
    const IntensityModelParams params{200.0, 0.2, 0.3, 1.0};
    EffortSignal effort;
    std::vector<double> times;
    for (int f = 0; f <= 600; ++f) {
        times.push_back(f / 60.0);
        effort.values.push_back(0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * f / 60.0));
    }
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_am(effort, times, params, 48000.0));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 480000);
}
BENCHMARK(BM_SynthesizeAm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
