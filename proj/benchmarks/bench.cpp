#include <benchmark/benchmark.h>

#include "ipmesh/kdv.hpp"
#include "ipmesh/mesh_adapt.hpp"
#include "ipmesh/sine_gordon.hpp"
#include "ipmesh/time_stepping.hpp"
#include "ipmesh/transfer.hpp"

using namespace ipmesh;

namespace {

Mesh1D kdv_mesh(Index M) { return Mesh1D::uniform(-100, 100, M, true); }

void BM_AssembleKdv(benchmark::State& state) {
    const Mesh1D mesh = kdv_mesh(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_operators(mesh));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleKdv)->RangeMultiplier(2)->Range(200, 3200)->Complexity();

void BM_StepDgKdv(benchmark::State& state) {
    const KdvSystem sys(kdv_mesh(state.range(0)));
    const Vector u = kdv_exact_state(sys.mesh(), 0, 6);
    for (auto _ : state) benchmark::DoNotOptimize(step_dg(sys, u, 0.01, SolverConfig{}));
}
BENCHMARK(BM_StepDgKdv)->Arg(400)->Arg(1600);

void BM_StepDgSineGordon(benchmark::State& state) {
    const SineGordonSystem sys(Mesh1D::uniform(-30, 30, state.range(0), true));
    const Vector u = sg_exact_state(Mesh1D::uniform(-30, 30, state.range(0), true), 0, 0.99);
    for (auto _ : state) benchmark::DoNotOptimize(step_dg(sys, u, 0.01, SolverConfig{}));
}
BENCHMARK(BM_StepDgSineGordon)->Arg(300)->Arg(1200);

void BM_AdaptMesh(benchmark::State& state) {
    const Mesh1D mesh = kdv_mesh(state.range(0));
    const Vector u = kdv_exact_state(mesh, 0, 6);
    const MonitorConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(adapt_mesh(u, mesh, cfg));
}
BENCHMARK(BM_AdaptMesh)->Arg(400)->Arg(3200);

void BM_PchipTransfer(benchmark::State& state) {
    const Mesh1D a = kdv_mesh(state.range(0));
    const Vector u = kdv_exact_state(a, 0, 6);
    const Mesh1D b = adapt_mesh(u, a, MonitorConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(transfer_nodal(a, u, b, InterpKind::Cubic));
}
BENCHMARK(BM_PchipTransfer)->Arg(400)->Arg(3200);

}  // namespace

BENCHMARK_MAIN();
