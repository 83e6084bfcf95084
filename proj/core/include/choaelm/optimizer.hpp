#pragma once

#include "choaelm/chaos.hpp"
#include "choaelm/rng.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace choaelm {

/// Box-bounded continuous search domain.
struct SearchSpace {
    std::vector<double> lower;
    std::vector<double> upper;

    SearchSpace(std::vector<double> lo, std::vector<double> hi);
    static SearchSpace cube(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lower.size(); }
};

/// Loss to minimize; must return a finite value for any in-bounds input.
using ObjectiveFn = std::function<double(const std::vector<double>&)>;

struct OptimizerConfig {
    std::size_t population = 50;
    std::size_t max_iters = 10;
    std::optional<double> target_loss;
    std::uint64_t seed = 1;
    ChaoticMapKind chaos_map = ChaoticMapKind::GaussMouse;

    void validate() const; // population >= 4, max_iters >= 1
};

/// Outcome of one optimizer run. best_per_iter[0] is the best loss after the
/// initial evaluation; entry k >= 1 is the best loss after iteration k.
struct RunTrace {
    std::vector<double> best_per_iter;
    std::vector<double> best_vector;
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    double elapsed_seconds = 0.0;

    std::size_t iterations() const {
        return best_per_iter.empty() ? 0 : best_per_iter.size() - 1;
    }
};

/// n points uniform in the box, componentwise, deterministic per seed.
std::vector<std::vector<double>> init_population(const SearchSpace& space, std::size_t n,
                                                 std::uint64_t seed);
std::vector<std::vector<double>> init_population(const SearchSpace& space, std::size_t n,
                                                 Rng& rng);

/// Componentwise projection onto the box.
std::vector<double> clamp(const SearchSpace& space, std::vector<double> v);

/// True once the iteration budget is exhausted or the target loss is reached.
bool should_stop(const OptimizerConfig& cfg, std::size_t iter, double best);

/// Evaluate the objective, rejecting non-finite losses with a diagnostic.
double evaluate_checked(const ObjectiveFn& objective, const std::vector<double>& x);

} // namespace choaelm
