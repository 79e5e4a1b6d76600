#include <benchmark/benchmark.h>

#include "slp/comb.hpp"
#include "slp/mbe_solver.hpp"

using namespace slp;

namespace {

void BM_StepFull(benchmark::State& state)
{
    const PhysicalParams p;
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid g = Grid::with_unit_cfl(-100.0, 100.0, n, p.light_speed);
    const ControlProfile prof{HomogeneousControl{}};
    auto s = stored_gaussian(g, 10.0);
    for (auto _ : state) {
        s = step_full(s, prof, p, g.dt);
        benchmark::DoNotOptimize(s.s.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepFull)->Arg(1001)->Arg(2001)->Arg(4001);

// z-dependent controls are resampled every step
void BM_StepFullFoci(benchmark::State& state)
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-150.0, 150.0, 2401, p.light_speed);
    GaussianFoci foci;
    foci.plus_focus.start = -100.0;
    foci.minus_focus.start = 100.0;
    foci.rayleigh_range = 100.0;
    const ControlProfile prof{foci};
    auto s = stored_gaussian(g, 10.0);
    for (auto _ : state) {
        s = step_full(s, prof, p, g.dt);
        benchmark::DoNotOptimize(s.s.data());
    }
    state.SetItemsProcessed(state.iterations() * 2401);
}
BENCHMARK(BM_StepFullFoci);

void BM_StepAdiabatic(benchmark::State& state)
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-100.0, 100.0, 2001, p.light_speed);
    const ControlProfile prof{HomogeneousControl{}};
    auto s = stored_gaussian(g, 10.0);
    for (auto _ : state) {
        s = step_adiabatic(s, prof, p, g.dt);
        benchmark::DoNotOptimize(s.s.data());
    }
}
BENCHMARK(BM_StepAdiabatic);

void BM_CombEvolve(benchmark::State& state)
{
    const PhysicalParams p;
    const Grid g = Grid::with_unit_cfl(-80.0, 80.0, 1281, p.light_speed);
    const auto comb = equally_spaced_comb(static_cast<std::size_t>(state.range(0)), 0.1, 0.2);
    auto cs = comb_initial(g, comb, gaussian_envelope(g, 10.0));
    for (auto _ : state) {
        cs = comb_evolve(cs, p, g.dt);
        benchmark::DoNotOptimize(cs.s.data());
    }
}
BENCHMARK(BM_CombEvolve)->Arg(1)->Arg(3)->Arg(6);

} // namespace
