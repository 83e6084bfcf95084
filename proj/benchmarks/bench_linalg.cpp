#include "choaelm/linalg.hpp"
#include "choaelm/rng.hpp"

#include <benchmark/benchmark.h>

using namespace choaelm;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.uniform(-1.0, 1.0);
    return m;
}

void bm_pseudoinverse(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const Matrix a = random_matrix(rows, cols, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pseudoinverse(a));
    }
}

void bm_least_squares(benchmark::State& state) {
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const Matrix h = random_matrix(rows, cols, 2);
    const Matrix t = random_matrix(rows, 2, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(least_squares_min_norm(h, t));
    }
}

} // namespace

BENCHMARK(bm_pseudoinverse)->Args({50, 20})->Args({200, 40})->Args({200, 120});
BENCHMARK(bm_least_squares)->Args({200, 40})->Args({200, 120})->Args({1000, 120});
