#include <benchmark/benchmark.h>

#include "bfmix/elliptic.hpp"
#include "bfmix/laurent.hpp"
#include "bfmix/melnikov.hpp"
#include "bfmix/variational.hpp"

using namespace bfmix;

namespace {

ModelParams case2(const Rational& g, const Rational& omega_j, int modes)
{
    ModelParams p;
    p.omega0 = 1;
    p.omegas.assign(modes, omega_j);
    p.cj_sq.assign(modes, Rational(0));
    p.c0_sq = 1;
    p.g_bf = g;
    return p;
}

void BM_WpLaurent(benchmark::State& state)
{
    const auto e = invariants_from_energy(1, Rational(1, 3), Rational(1, 5));
    for (auto _ : state)
        benchmark::DoNotOptimize(wp_laurent(e, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_WpLaurent)->Arg(16)->Arg(32)->Arg(64);

void BM_SeriesProduct(benchmark::State& state)
{
    const auto e = invariants_from_energy(1, Rational(1, 3), Rational(1, 5));
    const ExactSeries s = wp_laurent(e, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(s * s);
}
BENCHMARK(BM_SeriesProduct)->Arg(16)->Arg(32);

void BM_Case2Analysis(benchmark::State& state)
{
    const ModelParams p = case2(1, 1, static_cast<int>(state.range(0)));
    const auto e = invariants_from_energy(1, 1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(analyze_case2(p, e, 16));
}
BENCHMARK(BM_Case2Analysis)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Case2Float(benchmark::State& state)
{
    const ModelParams p = case2(3, Rational(3, 7), 1);
    const auto e = invariants_from_energy(1, 1, Rational(1, 5));
    const HigherVEChoice ch{3, Pick::first, Pick::first, Pick::first, Pick::first, Row::first};
    for (auto _ : state)
        benchmark::DoNotOptimize(Case2Expansion<Complex>(p, e, 16).solve(ch));
}
BENCHMARK(BM_Case2Float)->Unit(benchmark::kMillisecond);

void BM_MelnikovContour(benchmark::State& state)
{
    const auto s = setup(1, 1, Rational(1, 100), 1, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(melnikov_contour(s, 0.3, s.contour_radius, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MelnikovContour)->Arg(256)->Arg(1024);

void BM_MelnikovSineFit(benchmark::State& state)
{
    const auto s = setup(1, 1, Rational(1, 100), 1, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(fit_sine(s, 64));
}
BENCHMARK(BM_MelnikovSineFit)->Unit(benchmark::kMillisecond);

}
BENCHMARK_MAIN();
