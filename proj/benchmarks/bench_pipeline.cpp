#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "goafem/assembly.hpp"
#include "goafem/driver.hpp"
#include "goafem/estimators.hpp"
#include "goafem/marking.hpp"
#include "goafem/sparse.hpp"

using namespace goafem;

namespace {

Mesh mesh_with_elements(long target) {
    Mesh mesh = initial_mesh(8);
    while (mesh.n_triangles() < target) {
        std::vector<int> all(mesh.n_triangles());
        std::iota(all.begin(), all.end(), 0);
        mesh = refine_nvb(mesh, all);
    }
    return mesh;
}

void RefineNvb(benchmark::State& state) {
    const Mesh mesh = mesh_with_elements(state.range(0));
    std::vector<int> marked;
    for (int t = 0; t < mesh.n_triangles(); t += 3) marked.push_back(t);
    for (auto _ : state) {
        Mesh refined = refine_nvb(mesh, marked);
        benchmark::DoNotOptimize(refined.n_triangles());
    }
    state.SetComplexityN(mesh.n_triangles());
}
BENCHMARK(RefineNvb)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void AssembleBilinear(benchmark::State& state) {
    const Mesh mesh = mesh_with_elements(state.range(0));
    const FeSpace space = build_space(mesh, 2);
    const CoefficientSet coeffs;
    for (auto _ : state) {
        SparseMatrix m = assemble_bilinear(space, coeffs);
        benchmark::DoNotOptimize(m.nnz());
    }
    state.SetComplexityN(mesh.n_triangles());
}
BENCHMARK(AssembleBilinear)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void SolvePrimal(benchmark::State& state) {
    const BenchmarkProblem prob = weighted_l2_problem();
    const Mesh mesh = mesh_with_elements(state.range(0));
    const FeSpace space = build_space(mesh, 2);
    const SparseMatrix matrix = assemble_bilinear(space, prob.coeffs);
    const std::vector<double> rhs = assemble_primal_rhs(space, prob.loads);
    for (auto _ : state) {
        auto u = solve_primal(matrix, rhs, space.dirichlet_mask());
        benchmark::DoNotOptimize(u.data());
    }
    state.SetComplexityN(space.n_dofs());
}
BENCHMARK(SolvePrimal)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void EtaIndicators(benchmark::State& state) {
    const BenchmarkProblem prob = weighted_l2_problem();
    const Mesh mesh = mesh_with_elements(state.range(0));
    const FeSpace space = build_space(mesh, 2);
    const SparseMatrix matrix = assemble_bilinear(space, prob.coeffs);
    const auto u = solve_primal(matrix, assemble_primal_rhs(space, prob.loads),
                                space.dirichlet_mask());
    for (auto _ : state) {
        auto eta = eta_indicators(space, u, prob.coeffs, prob.loads);
        benchmark::DoNotOptimize(eta.data());
    }
    state.SetComplexityN(mesh.n_triangles());
}
BENCHMARK(EtaIndicators)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void DoerflerMark(benchmark::State& state) {
    std::vector<double> ind(state.range(0));
    unsigned x = 123456789;
    for (double& v : ind) {
        x = x * 1664525u + 1013904223u;
        v = static_cast<double>(x) / 4294967296.0;
    }
    for (auto _ : state) {
        MarkedSet m = doerfler_min(ind, 0.5);
        benchmark::DoNotOptimize(m.indices.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DoerflerMark)->RangeMultiplier(8)->Range(1024, 524288)->Complexity();

void AdaptiveLevelPipeline(benchmark::State& state) {
    const BenchmarkProblem prob = convection_problem();
    for (auto _ : state) {
        RunOptions opt;
        opt.strategy = Strategy::A;
        opt.theta = 0.5;
        opt.p = 1;
        opt.max_dofs = static_cast<int>(state.range(0));
        RunResult res = run_goafem(prob, opt);
        benchmark::DoNotOptimize(res.records.size());
    }
}
BENCHMARK(AdaptiveLevelPipeline)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
