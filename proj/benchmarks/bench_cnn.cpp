#include "choaelm/cnn.hpp"
#include "choaelm/rng.hpp"

#include <benchmark/benchmark.h>

using namespace choaelm;

namespace {

void bm_extract_features(benchmark::State& state, const char* structure) {
    const NetworkSpec spec = parse_structure(structure);
    const WeightStore store = seeded_weights(spec, 1);
    Rng rng(2);
    ImageTensor img(1, 32, 32);
    for (double& v : img.data) v = rng.uniform();
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_features(img, spec, store));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

} // namespace

BENCHMARK_CAPTURE(bm_extract_features, six, "in_6c_2p_12c_2p");
BENCHMARK_CAPTURE(bm_extract_features, eight, "in_8c_2p_16c_2p");
