// Microbenchmarks for the hot paths: cocycle residuals, hom-complex
// dimensions, and contraction frame evaluation.

#include <benchmark/benchmark.h>

#include "hrep/hom_complex.hpp"
#include "hrep/library.hpp"
#include "hrep/models.hpp"

using namespace hrep;

static void BM_CocycleResidualFiniteModel(benchmark::State& state) {
    auto rep = z2_action_two_term();
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cocycle_residual(*rep, k));
}
BENCHMARK(BM_CocycleResidualFiniteModel)->Arg(2)->Arg(3)->Arg(4);

static void BM_CocycleResidualBundle(benchmark::State& state) {
    auto model = mapping_torus_model(1, 16, 4);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cocycle_residual(*model.two_term, k));
}
BENCHMARK(BM_CocycleResidualBundle)->Arg(2)->Arg(3);

static void BM_HomDimension(benchmark::State& state) {
    auto lib = standard_library("z4");
    const HomotopyRep& e = *lib.front().rep;
    const HomotopyRep& f = *lib.back().rep;
    for (auto _ : state) benchmark::DoNotOptimize(drep_hom_dimension(e, f, 0));
}
BENCHMARK(BM_HomDimension);

static void BM_ContractionFrame(benchmark::State& state) {
    ContractionHomotopy h(CharacterList::parse("2,-1;3,0"), 64, 64);
    int grid[2] = {17, 41};
    int ti = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h.frame(grid, ti));
        ti = (ti + 1) % h.n_t();
    }
}
BENCHMARK(BM_ContractionFrame);

BENCHMARK_MAIN();
