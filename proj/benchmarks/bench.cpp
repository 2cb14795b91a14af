#include <hemispec/fem.hpp>
#include <hemispec/models.hpp>
#include <hemispec/spectra.hpp>
#include <hemispec/verify.hpp>

#include <benchmark/benchmark.h>

using namespace hemispec;

namespace {

void BM_geometric_data(benchmark::State& state) {
    Model m = make_htorus_half(4, 2, 0.55);
    for (auto _ : state) benchmark::DoNotOptimize(geometric_data(m));
}
BENCHMARK(BM_geometric_data);

void BM_strong_index(benchmark::State& state) {
    Model m = make_htorus_half(static_cast<int>(state.range(0)), 1, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(strong_index(m));
}
BENCHMARK(BM_strong_index)->Arg(3)->Arg(6);

void BM_jacobi_spectrum(benchmark::State& state) {
    Model m = make_clifford_half(4, 2);
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_spectrum(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_jacobi_spectrum)->Arg(8)->Arg(16);

void BM_index_scan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(index_scan(3, 1, 0.3, 0.95, 1e-3));
}
BENCHMARK(BM_index_scan);

void BM_position_identities(benchmark::State& state) {
    Model m = make_htorus_half(3, 2, 0.6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_position_identities(m, 1, 10, 42));
    }
}
BENCHMARK(BM_position_identities);

void BM_assemble_hemisphere(benchmark::State& state) {
    fem::Mesh mesh = fem::mesh_hemisphere(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fem::assemble(mesh, 2.0));
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_assemble_hemisphere)->Arg(4)->Arg(6);

void BM_solve_dense(benchmark::State& state) {
    auto [mesh, pot] = fem::model_mesh(make_equator(2), static_cast<int>(state.range(0)));
    auto sys = fem::assemble(mesh, pot);
    fem::SpMat K = sys.jacobi_matrix();
    fem::SolveOptions opts;
    opts.count = 6;
    opts.shift = -pot - 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(fem::solve_lowest(K, sys.mass, opts));
}
BENCHMARK(BM_solve_dense)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_solve_shift_invert(benchmark::State& state) {
    auto [mesh, pot] = fem::model_mesh(make_clifford_half(2, 1), static_cast<int>(state.range(0)));
    auto sys = fem::assemble(mesh, pot);
    fem::SpMat K = sys.jacobi_matrix();
    fem::SolveOptions opts;
    opts.count = 8;
    opts.dense_cutoff = 0;
    opts.shift = -pot - 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(fem::solve_lowest(K, sys.mass, opts));
}
BENCHMARK(BM_solve_shift_invert)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
