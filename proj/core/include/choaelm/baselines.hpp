#pragma once

#include "choaelm/choa.hpp"
#include "choaelm/optimizer.hpp"

#include <optional>
#include <string_view>

namespace choaelm {

struct GaParams {
    double crossover_prob = 0.7;
    double mutation_prob = 0.1;
    double mutation_sigma_frac = 0.1; // sigma = frac * (upper - lower) per gene
};

struct CsParams {
    double discovery_rate = 0.25;
    double step_scale = 0.01; // Levy step = scale * (upper - lower) * levy draw
    double levy_beta = 1.5;
};

struct WoaParams {
    double spiral_b = 1.0;
};

/// Real-coded GA generation: tournament selection (k = 2), uniform crossover,
/// per-gene Gaussian mutation, single-best elitism. Offspring are clamped and
/// left unevaluated; the caller owns loss bookkeeping.
std::vector<std::vector<double>> ga_step(const std::vector<std::vector<double>>& population,
                                         const std::vector<double>& losses, Rng& rng,
                                         const SearchSpace& space, const GaParams& params = {});

/// Cuckoo generation: one Mantegna Levy proposal per nest accepted into its own
/// slot when it beats a randomly chosen nest, then the worst nests
/// (floor(rate * pop) of them) are re-initialized uniformly. Evaluates
/// internally; losses are updated alongside the population.
void cs_step(std::vector<std::vector<double>>& population, std::vector<double>& losses,
             Rng& rng, const SearchSpace& space, const ObjectiveFn& objective,
             const CsParams& params = {}, std::size_t* evaluations = nullptr);

/// Linear shrink schedule a = 2 * (1 - t/T), from 2 at t = 0 down to 0 at t = T.
double woa_shrink_coefficient(std::size_t t, std::size_t T);

/// Whale generation at schedule position t of T: shrinking encircling or
/// random-whale search when p < 0.5, log-spiral around the best otherwise.
/// Offspring are clamped and left unevaluated.
std::vector<std::vector<double>> woa_step(const std::vector<std::vector<double>>& population,
                                          const std::vector<double>& losses, Rng& rng,
                                          const SearchSpace& space, std::size_t t,
                                          std::size_t T, const WoaParams& params = {});

RunTrace ga_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                     const OptimizerConfig& cfg, const GaParams& params = {});
RunTrace cs_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                     const OptimizerConfig& cfg, const CsParams& params = {});
RunTrace woa_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                      const OptimizerConfig& cfg, const WoaParams& params = {});

/// "None" evaluates a single random point: the unoptimized baseline.
enum class OptimizerKind { Choa, Ga, Cs, Woa, None };

std::string_view optimizer_kind_name(OptimizerKind kind);
std::optional<OptimizerKind> optimizer_kind_from_name(std::string_view name);

RunTrace run_optimizer(OptimizerKind kind, ChoaStrategy strategy, const SearchSpace& space,
                       const ObjectiveFn& objective, const OptimizerConfig& cfg);

} // namespace choaelm
