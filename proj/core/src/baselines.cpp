#include "choaelm/baselines.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace choaelm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t best_index(const std::vector<double>& losses) {
    return static_cast<std::size_t>(
        std::min_element(losses.begin(), losses.end()) - losses.begin());
}

std::size_t worst_index(const std::vector<double>& losses) {
    return static_cast<std::size_t>(
        std::max_element(losses.begin(), losses.end()) - losses.begin());
}

// Mantegna step length for Levy index beta.
double levy_draw(Rng& rng, double beta) {
    const double num = std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0);
    const double den =
        std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    const double sigma_u = std::pow(num / den, 1.0 / beta);
    const double u = rng.gaussian() * sigma_u;
    const double v = rng.gaussian();
    return u / std::pow(std::abs(v) + 1e-300, 1.0 / beta);
}

// Shared generation loop: step produces the next population, the driver
// evaluates it, enforces single-best survival and keeps the elitist trace.
template <typename StepFn>
RunTrace run_generational(const SearchSpace& space, const ObjectiveFn& objective,
                          const OptimizerConfig& cfg, StepFn&& step) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    Rng rng(cfg.seed);
    auto population = init_population(space, cfg.population, rng);
    std::vector<double> losses(cfg.population);
    RunTrace trace;
    for (std::size_t i = 0; i < population.size(); ++i) {
        losses[i] = evaluate_checked(objective, population[i]);
    }
    trace.evaluations = cfg.population;

    std::size_t bi = best_index(losses);
    std::vector<double> best = population[bi];
    double best_loss = losses[bi];
    trace.best_per_iter.push_back(best_loss);

    std::size_t iter = 0;
    while (!should_stop(cfg, iter, best_loss)) {
        const std::size_t t = iter + 1;
        step(population, losses, rng, t, trace.evaluations);

        bi = best_index(losses);
        if (losses[bi] < best_loss) {
            best_loss = losses[bi];
            best = population[bi];
        } else if (losses[bi] > best_loss) {
            // Single-best elitism: re-insert the incumbent over the worst.
            const std::size_t wi = worst_index(losses);
            population[wi] = best;
            losses[wi] = best_loss;
        }
        trace.best_per_iter.push_back(best_loss);
        ++iter;
    }

    trace.best_vector = std::move(best);
    trace.best_loss = best_loss;
    trace.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

} // namespace

std::vector<std::vector<double>> ga_step(const std::vector<std::vector<double>>& population,
                                         const std::vector<double>& losses, Rng& rng,
                                         const SearchSpace& space, const GaParams& params) {
    if (population.empty()) throw InvalidInput("ga_step requires a non-empty population");
    const std::size_t n = population.size();
    const std::size_t dim = space.dim();

    auto tournament = [&]() -> const std::vector<double>& {
        const std::size_t a = rng.index(n);
        const std::size_t b = rng.index(n);
        return losses[a] <= losses[b] ? population[a] : population[b];
    };

    std::vector<std::vector<double>> next;
    next.reserve(n);
    next.push_back(population[best_index(losses)]); // elite carries over untouched

    while (next.size() < n) {
        const auto& p1 = tournament();
        const auto& p2 = tournament();
        std::vector<double> child(dim);
        const bool cross = rng.uniform() < params.crossover_prob;
        for (std::size_t d = 0; d < dim; ++d) {
            if (cross) {
                child[d] = rng.uniform() < 0.5 ? p1[d] : p2[d];
            } else {
                child[d] = p1[d];
            }
        }
        for (std::size_t d = 0; d < dim; ++d) {
            if (rng.uniform() < params.mutation_prob) {
                const double sigma =
                    params.mutation_sigma_frac * (space.upper[d] - space.lower[d]);
                child[d] += sigma * rng.gaussian();
            }
        }
        next.push_back(clamp(space, std::move(child)));
    }
    return next;
}

void cs_step(std::vector<std::vector<double>>& population, std::vector<double>& losses,
             Rng& rng, const SearchSpace& space, const ObjectiveFn& objective,
             const CsParams& params, std::size_t* evaluations) {
    if (population.empty()) throw InvalidInput("cs_step requires a non-empty population");
    const std::size_t n = population.size();
    const std::size_t dim = space.dim();

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> proposal = population[i];
        for (std::size_t d = 0; d < dim; ++d) {
            proposal[d] +=
                params.step_scale * (space.upper[d] - space.lower[d]) * levy_draw(rng, params.levy_beta);
        }
        proposal = clamp(space, std::move(proposal));
        const double f = evaluate_checked(objective, proposal);
        if (evaluations) ++*evaluations;
        const std::size_t j = rng.index(n);
        if (f < losses[j]) {
            population[i] = std::move(proposal);
            losses[i] = f;
        }
    }

    // Abandon the worst floor(rate * n) nests, never the current best.
    const auto discard = static_cast<std::size_t>(params.discovery_rate * static_cast<double>(n));
    if (discard == 0) return;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return losses[a] > losses[b]; });
    for (std::size_t k = 0; k < discard && k < n - 1; ++k) {
        const std::size_t i = order[k];
        for (std::size_t d = 0; d < dim; ++d) {
            population[i][d] = rng.uniform(space.lower[d], space.upper[d]);
        }
        losses[i] = evaluate_checked(objective, population[i]);
        if (evaluations) ++*evaluations;
    }
}

double woa_shrink_coefficient(std::size_t t, std::size_t T) {
    if (T == 0) throw InvalidInput("woa shrink schedule requires T >= 1");
    return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(T));
}

std::vector<std::vector<double>> woa_step(const std::vector<std::vector<double>>& population,
                                          const std::vector<double>& losses, Rng& rng,
                                          const SearchSpace& space, std::size_t t,
                                          std::size_t T, const WoaParams& params) {
    if (population.empty()) throw InvalidInput("woa_step requires a non-empty population");
    const std::size_t n = population.size();
    const std::size_t dim = space.dim();
    const double a = woa_shrink_coefficient(t, T);
    const auto& best = population[best_index(losses)];

    std::vector<std::vector<double>> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = population[i];
        std::vector<double> moved(dim);
        const double p = rng.uniform();
        if (p < 0.5) {
            const double r1 = rng.uniform();
            const double r2 = rng.uniform();
            const double A = 2.0 * a * r1 - a;
            const double C = 2.0 * r2;
            const auto& target = std::abs(A) < 1.0 ? best : population[rng.index(n)];
            for (std::size_t d = 0; d < dim; ++d) {
                const double dist = std::abs(C * target[d] - x[d]);
                moved[d] = target[d] - A * dist;
            }
        } else {
            const double l = rng.uniform(-1.0, 1.0);
            const double spiral = std::exp(params.spiral_b * l) * std::cos(2.0 * kPi * l);
            for (std::size_t d = 0; d < dim; ++d) {
                moved[d] = std::abs(best[d] - x[d]) * spiral + best[d];
            }
        }
        next[i] = clamp(space, std::move(moved));
    }
    return next;
}

RunTrace ga_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                     const OptimizerConfig& cfg, const GaParams& params) {
    return run_generational(
        space, objective, cfg,
        [&](std::vector<std::vector<double>>& pop, std::vector<double>& losses, Rng& rng,
            std::size_t, std::size_t& evals) {
            pop = ga_step(pop, losses, rng, space, params);
            for (std::size_t i = 0; i < pop.size(); ++i) {
                losses[i] = evaluate_checked(objective, pop[i]);
            }
            evals += pop.size();
        });
}

RunTrace cs_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                     const OptimizerConfig& cfg, const CsParams& params) {
    return run_generational(
        space, objective, cfg,
        [&](std::vector<std::vector<double>>& pop, std::vector<double>& losses, Rng& rng,
            std::size_t, std::size_t& evals) {
            cs_step(pop, losses, rng, space, objective, params, &evals);
        });
}

RunTrace woa_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                      const OptimizerConfig& cfg, const WoaParams& params) {
    return run_generational(
        space, objective, cfg,
        [&](std::vector<std::vector<double>>& pop, std::vector<double>& losses, Rng& rng,
            std::size_t t, std::size_t& evals) {
            pop = woa_step(pop, losses, rng, space, t, cfg.max_iters, params);
            for (std::size_t i = 0; i < pop.size(); ++i) {
                losses[i] = evaluate_checked(objective, pop[i]);
            }
            evals += pop.size();
        });
}

std::string_view optimizer_kind_name(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::Choa: return "choa";
    case OptimizerKind::Ga: return "ga";
    case OptimizerKind::Cs: return "cs";
    case OptimizerKind::Woa: return "woa";
    case OptimizerKind::None: return "none";
    }
    return "?";
}

std::optional<OptimizerKind> optimizer_kind_from_name(std::string_view name) {
    if (name == "choa") return OptimizerKind::Choa;
    if (name == "ga") return OptimizerKind::Ga;
    if (name == "cs") return OptimizerKind::Cs;
    if (name == "woa") return OptimizerKind::Woa;
    if (name == "none") return OptimizerKind::None;
    return std::nullopt;
}

RunTrace run_optimizer(OptimizerKind kind, ChoaStrategy strategy, const SearchSpace& space,
                       const ObjectiveFn& objective, const OptimizerConfig& cfg) {
    switch (kind) {
    case OptimizerKind::Choa:
        return choa_optimize(space, objective, cfg, strategy);
    case OptimizerKind::Ga:
        return ga_optimize(space, objective, cfg);
    case OptimizerKind::Cs:
        return cs_optimize(space, objective, cfg);
    case OptimizerKind::Woa:
        return woa_optimize(space, objective, cfg);
    case OptimizerKind::None: {
        const auto t0 = std::chrono::steady_clock::now();
        RunTrace trace;
        trace.best_vector = init_population(space, 1, cfg.seed).front();
        trace.best_loss = evaluate_checked(objective, trace.best_vector);
        trace.evaluations = 1;
        trace.best_per_iter = {trace.best_loss};
        trace.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return trace;
    }
    }
    throw InvalidInput("unknown optimizer kind");
}

} // namespace choaelm
