#include <benchmark/benchmark.h>

#include <vector>

#include "pnm/estimate.hpp"
#include "pnm/generate.hpp"

namespace {

pnm::Graph sample_graph(std::size_t n) {
    pnm::RandomStream rng(3);
    std::vector<double> alpha(n);
    for (double& a : alpha) {
        a = rng.uniform(-0.5, 0.5);
    }
    return pnm::generate_graph(pnm::NodeParams{alpha}, pnm::validate(pnm::Independent{}, n), rng);
}

void fit_with(benchmark::State& state, pnm::Solver solver) {
    const auto degrees = sample_graph(static_cast<std::size_t>(state.range(0))).degree_targets();
    pnm::FitOptions opts;
    opts.solver = solver;
    opts.kantorovich = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pnm::fit_alpha(degrees, opts).alpha_hat.data());
    }
}

void BM_FitExact(benchmark::State& state) {
    fit_with(state, pnm::Solver::exact_jacobian);
}
BENCHMARK(BM_FitExact)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_FitDiagonal(benchmark::State& state) {
    fit_with(state, pnm::Solver::diagonal_approx);
}
BENCHMARK(BM_FitDiagonal)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
