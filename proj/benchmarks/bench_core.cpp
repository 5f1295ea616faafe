#include <benchmark/benchmark.h>

#include "bridgebench/analytic.hpp"
#include "bridgebench/fem.hpp"
#include "bridgebench/flux.hpp"
#include "bridgebench/mesh.hpp"
#include "bridgebench/study.hpp"

using namespace bridgebench;

namespace {

Mesh case1_mesh(int nx, ElementOrder order) {
    return build_uniform_grid(0.2, 0.4, nx, 2 * nx, order);
}

void BM_Assemble(benchmark::State& state) {
    const Mesh mesh =
        case1_mesh(static_cast<int>(state.range(0)), ElementOrder::linear);
    const BoundarySpec bc = case1_boundary_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(mesh, Material{}, bc));
    }
    state.SetItemsProcessed(state.iterations() * mesh.quad_count());
}
BENCHMARK(BM_Assemble)->Arg(20)->Arg(40)->Arg(80);

void BM_Solve(benchmark::State& state) {
    const Mesh mesh =
        case1_mesh(static_cast<int>(state.range(0)), ElementOrder::linear);
    const LinearSystem system =
        assemble(mesh, Material{}, case1_boundary_spec());
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(system));
    }
    state.SetItemsProcessed(state.iterations() * system.matrix.rows());
}
BENCHMARK(BM_Solve)->Arg(20)->Arg(40)->Arg(80);

void BM_FluxRecovery(benchmark::State& state) {
    const Mesh mesh =
        case1_mesh(static_cast<int>(state.range(0)), ElementOrder::linear);
    const TemperatureField field =
        solve(assemble(mesh, Material{}, case1_boundary_spec()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            average_to_nodes(recover_gauss_flux(mesh, field, Material{})));
    }
    state.SetItemsProcessed(state.iterations() * mesh.quad_count());
}
BENCHMARK(BM_FluxRecovery)->Arg(20)->Arg(40)->Arg(80);

void BM_SerendipityAssemble(benchmark::State& state) {
    const Mesh mesh =
        case1_mesh(static_cast<int>(state.range(0)), ElementOrder::serendipity);
    const BoundarySpec bc = case1_boundary_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(mesh, Material{}, bc));
    }
    state.SetItemsProcessed(state.iterations() * mesh.quad_count());
}
BENCHMARK(BM_SerendipityAssemble)->Arg(20)->Arg(40);

void BM_SeriesTemperature(benchmark::State& state) {
    const Case1Exact cfg;
    // The series converges slowest close to the hot edge.
    const double y = state.range(0) / 1000.0 * cfg.L;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_temperature(cfg, 0.1, y));
    }
}
BENCHMARK(BM_SeriesTemperature)->Arg(500)->Arg(875)->Arg(995);

void BM_ExactClippedFlow(benchmark::State& state) {
    const Case1Exact cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_masked_heat_flow(cfg, 0.00125));
    }
}
BENCHMARK(BM_ExactClippedFlow);

}  // namespace

BENCHMARK_MAIN();
