#include <benchmark/benchmark.h>

#include <vector>

#include "pnm/covariance.hpp"

namespace {

void BM_SamplePowerDecay(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cov = pnm::validate(pnm::PowerDecay{0.5}, n);
    pnm::RandomStream rng(1);
    std::vector<double> u(cov.dimension());
    for (auto _ : state) {
        cov.sample_into(rng, u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cov.dimension()));
}
BENCHMARK(BM_SamplePowerDecay)->Arg(100)->Arg(500);

void BM_SampleEquicorrelated(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cov = pnm::validate(pnm::Equicorrelated{0.1}, n);
    pnm::RandomStream rng(2);
    std::vector<double> u(cov.dimension());
    for (auto _ : state) {
        cov.sample_into(rng, u);
        benchmark::DoNotOptimize(u.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cov.dimension()));
}
BENCHMARK(BM_SampleEquicorrelated)->Arg(500);

}  // namespace
