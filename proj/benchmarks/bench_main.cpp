#include <benchmark/benchmark.h>

#include "plab/excursion.hpp"
#include "plab/fluctuation.hpp"
#include "plab/model.hpp"
#include "plab/rng.hpp"

namespace {

plab::ChainSpec srw_chain() {
    plab::BesselWalkParams wp;
    wp.mu = 0.0;
    wp.half_width = 4096;
    return plab::build_bessel_walk(wp, plab::Functional::sign());
}

void BM_ExcursionSample(benchmark::State& state) {
    plab::ChainSpec chain = srw_chain();
    plab::RngStream rng(1, 0);
    for (auto _ : state) {
        auto e = plab::sample_excursion(chain, rng);
        benchmark::DoNotOptimize(e.area);
    }
}
BENCHMARK(BM_ExcursionSample);

void BM_PassageSimulation(benchmark::State& state) {
    plab::ChainSpec chain = srw_chain();
    std::uint64_t r = 0;
    const double horizon = double(state.range(0));
    for (auto _ : state) {
        plab::RngStream rng(1, r++);
        auto p = plab::simulate_passage(chain, 1.0, horizon, chain.zero_index, 0.0, rng);
        benchmark::DoNotOptimize(p.steps);
    }
}
BENCHMARK(BM_PassageSimulation)->Arg(100)->Arg(10000);

void BM_AreaWalk(benchmark::State& state) {
    plab::ChainSpec chain = srw_chain();
    std::uint64_t r = 0;
    for (auto _ : state) {
        plab::RngStream rng(2, r++);
        auto w = plab::sample_area_walk(chain, 64, 1, rng);
        benchmark::DoNotOptimize(w.partial_sums.back());
    }
}
BENCHMARK(BM_AreaWalk);

} // namespace

BENCHMARK_MAIN();
