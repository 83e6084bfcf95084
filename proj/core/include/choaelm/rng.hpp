#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace choaelm {

/// Deterministic random source backing every stochastic draw in the library.
///
/// The raw bit stream comes from std::mt19937_64 (whose output sequence is
/// fixed by the standard); all mappings to doubles are hand-rolled here so
/// that sequences do not depend on the standard library's distribution
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform() * (hi - lo);
    }

    /// Standard normal via Box-Muller. Consumes two uniforms per call and
    /// keeps no cached state, so copies of an Rng stay in lockstep.
    double gaussian() {
        double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        double u2 = uniform();
        constexpr double two_pi = 6.28318530717958647692;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Uniform integer in [0, n); n must be positive.
    std::size_t index(std::size_t n) {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    /// Derive an independent, reproducible stream for a named sub-task.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix(mix(seed) ^ mix(stream + 0x632be59bd9b4e019ULL)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace choaelm
