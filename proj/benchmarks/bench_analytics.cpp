#include <benchmark/benchmark.h>

#include <cmath>

#include "slp/fokker_planck.hpp"
#include "slp/mbe_solver.hpp"
#include "slp/susceptibility.hpp"

using namespace slp;

namespace {

const StandingWave kEqual{cplx{std::sqrt(0.005), 0.0}, cplx{std::sqrt(0.005), 0.0}};

void BM_ChiScanTruncated(benchmark::State& state)
{
    const PhysicalParams p;
    const auto n_max = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum_scan(ChiMethod::Truncated, -0.02, 0.02, 400, kEqual, p, n_max));
}
BENCHMARK(BM_ChiScanTruncated)->Arg(0)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ChiScanCoupledMode(benchmark::State& state)
{
    const PhysicalParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(spectrum_scan(ChiMethod::CoupledMode, -0.02, 0.02, 400, kEqual, p));
}
BENCHMARK(BM_ChiScanCoupledMode)->Unit(benchmark::kMillisecond);

void BM_HermiteMode(benchmark::State& state)
{
    const OUParams ou{100.0, 1.0, 0.5};
    const HermiteMode m(static_cast<std::size_t>(state.range(0)), ou);
    double z = -40.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(m.profile(z));
        z = z > 40.0 ? -40.0 : z + 0.01;
    }
}
BENCHMARK(BM_HermiteMode)->Arg(2)->Arg(20)->Arg(100);

void BM_OUProject(benchmark::State& state)
{
    const OUParams ou{100.0, 1.0, 0.5};
    const Grid g = Grid::with_unit_cfl(-150.0, 150.0, 1501, 1.0);
    const auto f = ou_stationary(ou, g, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(ou_project(f, g, ou, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_OUProject)->Arg(10)->Arg(40);

} // namespace
