#include "choaelm/optimizer.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace choaelm {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw InvalidInput("search space bounds must be non-empty and equal length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
            throw InvalidInput("search space requires lower[i] < upper[i] at dimension " +
                               std::to_string(i));
        }
    }
}

SearchSpace SearchSpace::cube(std::size_t dim, double lo, double hi) {
    return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

void OptimizerConfig::validate() const {
    if (population < 4) throw InvalidInput("population must be at least 4");
    if (max_iters < 1) throw InvalidInput("max_iters must be at least 1");
}

std::vector<std::vector<double>> init_population(const SearchSpace& space, std::size_t n,
                                                 std::uint64_t seed) {
    Rng rng(seed);
    return init_population(space, n, rng);
}

std::vector<std::vector<double>> init_population(const SearchSpace& space, std::size_t n,
                                                 Rng& rng) {
    if (n == 0) throw InvalidInput("population size must be at least 1");
    std::vector<std::vector<double>> pop(n, std::vector<double>(space.dim()));
    for (auto& x : pop) {
        for (std::size_t d = 0; d < space.dim(); ++d) {
            x[d] = rng.uniform(space.lower[d], space.upper[d]);
        }
    }
    return pop;
}

std::vector<double> clamp(const SearchSpace& space, std::vector<double> v) {
    if (v.size() != space.dim()) {
        throw InvalidInput("clamp: vector length " + std::to_string(v.size()) +
                           " does not match dimension " + std::to_string(space.dim()));
    }
    for (std::size_t d = 0; d < v.size(); ++d) {
        v[d] = std::clamp(v[d], space.lower[d], space.upper[d]);
    }
    return v;
}

bool should_stop(const OptimizerConfig& cfg, std::size_t iter, double best) {
    if (iter >= cfg.max_iters) return true;
    return cfg.target_loss.has_value() && best <= *cfg.target_loss;
}

double evaluate_checked(const ObjectiveFn& objective, const std::vector<double>& x) {
    const double loss = objective(x);
    if (!std::isfinite(loss)) {
        throw NumericError("objective returned a non-finite loss");
    }
    return loss;
}

} // namespace choaelm
