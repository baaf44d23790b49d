#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "yamabe/exponents.hpp"
#include "yamabe/field.hpp"
#include "yamabe/random_field.hpp"
#include "yamabe/rearrange.hpp"
#include "yamabe/solver.hpp"

using namespace yamabe;

namespace {

Field bench_field(int half) {
    std::mt19937_64 rng(7);
    return random_line_field(rng, ManifoldFactor::homogeneous(1.0, 2.0), half,
                             0.25);
}

void BM_LpNorm(benchmark::State& state) {
    const auto u = bench_field(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(lp_norm(u, 2.0));
}
BENCHMARK(BM_LpNorm)->Arg(64)->Arg(512);

void BM_SteinerSymmetrize(benchmark::State& state) {
    const auto u = bench_field(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(steiner_symmetrize(u));
}
BENCHMARK(BM_SteinerSymmetrize)->Arg(64)->Arg(512);

void BM_Polarize(benchmark::State& state) {
    const auto u = bench_field(static_cast<int>(state.range(0)));
    const Polarizer h(0.5 * u.euclidean().spacing(), u.euclidean());
    for (auto _ : state)
        benchmark::DoNotOptimize(polarize(u, h));
}
BENCHMARK(BM_Polarize)->Arg(64)->Arg(512);

void BM_GreedySequence(benchmark::State& state) {
    const auto u = bench_field(16);
    for (auto _ : state) {
        auto run = greedy_polarization_sequence(u, 1.0, 20000);
        benchmark::DoNotOptimize(run.trace.steps.size());
    }
}
BENCHMARK(BM_GreedySequence);

void BM_MinimizeSubcritical(benchmark::State& state) {
    const RadialProblem prob(
        ManifoldFactor::homogeneous(4.0 * std::numbers::pi, 2.0),
        conformal_exponents(2, 1), 12.0, static_cast<int>(state.range(0)));
    SolveOptions opts;
    opts.tol = 1e-8;
    for (auto _ : state)
        benchmark::DoNotOptimize(minimize_subcritical(prob, 5.0, opts).lambda_s);
}
BENCHMARK(BM_MinimizeSubcritical)->Arg(600)->Arg(2400)->Unit(benchmark::kMillisecond);

void BM_ShootRadial(benchmark::State& state) {
    const RadialProblem prob(
        ManifoldFactor::homogeneous(4.0 * std::numbers::pi, 2.0),
        conformal_exponents(2, 1), 12.0, 600);
    for (auto _ : state)
        benchmark::DoNotOptimize(shoot_radial(prob, 5.0, 1.0).lambda);
}
BENCHMARK(BM_ShootRadial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
