#include "choaelm/choa.hpp"
#include "choaelm/pipeline.hpp"
#include "choaelm/test_functions.hpp"

#include <benchmark/benchmark.h>

using namespace choaelm;

namespace {

void bm_choa_sphere(benchmark::State& state) {
    const SearchSpace space = SearchSpace::cube(5, -10.0, 10.0);
    OptimizerConfig cfg;
    cfg.population = 50;
    cfg.max_iters = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(choa_optimize(space, sphere, cfg));
    }
}

void bm_elm_fitness(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const auto hidden = static_cast<std::size_t>(state.range(1));
    Rng rng(4);
    Matrix features(samples, 300);
    for (double& v : features.data()) v = rng.uniform(-1.0, 1.0);
    Matrix targets(samples, 2);
    for (std::size_t i = 0; i < samples; ++i) targets(i, i % 2) = 1.0;

    const ChimpLayout layout{300, hidden};
    std::vector<double> candidate(layout.total_dim());
    for (double& v : candidate) v = rng.uniform(-1.0, 1.0);

    for (auto _ : state) {
        benchmark::DoNotOptimize(elm_fitness(candidate, features, targets, layout));
    }
}

} // namespace

BENCHMARK(bm_choa_sphere)->Arg(10)->Arg(50);
BENCHMARK(bm_elm_fitness)->Args({200, 40})->Args({200, 120});
