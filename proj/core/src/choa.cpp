#include "choaelm/choa.hpp"

#include "choaelm/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace choaelm {

namespace {

std::vector<double> chaotic_position(const SearchSpace& space, ChaoticStream& chaos) {
    std::vector<double> x(space.dim());
    for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] = space.lower[d] + chaos.step_unit() * (space.upper[d] - space.lower[d]);
    }
    return x;
}

// Fitness-ranked top four of (previous leaders + current population). Adding
// candidates can only improve each rank, so leader losses never increase.
void refresh_leaders(LeaderSet& leaders, const std::vector<std::vector<double>>& positions,
                     const std::vector<double>& losses) {
    std::vector<std::pair<double, const std::vector<double>*>> pool;
    pool.reserve(positions.size() + 4);
    for (std::size_t k = 0; k < 4; ++k) {
        pool.emplace_back(leaders.loss[k], &leaders.position[k]);
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        pool.emplace_back(losses[i], &positions[i]);
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    LeaderSet next;
    for (std::size_t k = 0; k < 4; ++k) {
        next.loss[k] = pool[k].first;
        next.position[k] = *pool[k].second;
    }
    leaders = std::move(next);
}

std::vector<ChimpGroup> assign_groups(std::size_t n, Rng& rng) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Fisher-Yates, then round-robin so group sizes differ by at most one.
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.index(i)]);
    }
    std::vector<ChimpGroup> groups(n);
    constexpr ChimpGroup kGroups[4] = {ChimpGroup::One, ChimpGroup::Two, ChimpGroup::Three,
                                       ChimpGroup::Four};
    for (std::size_t i = 0; i < n; ++i) {
        groups[order[i]] = kGroups[i % 4];
    }
    return groups;
}

} // namespace

std::string_view choa_strategy_name(ChoaStrategy s) {
    return s == ChoaStrategy::Choa1 ? "choa1" : "choa2";
}

std::optional<ChoaStrategy> choa_strategy_from_name(std::string_view name) {
    if (name == "choa1") return ChoaStrategy::Choa1;
    if (name == "choa2") return ChoaStrategy::Choa2;
    return std::nullopt;
}

double dynamic_f(ChoaStrategy strategy, ChimpGroup group, std::size_t t, std::size_t T) {
    if (t < 1 || T < 1 || t > T) {
        throw InvalidInput("dynamic_f requires 1 <= t <= T");
    }
    const double td = static_cast<double>(t);
    const double Td = static_cast<double>(T);
    const double ratio = td / Td;
    if (strategy == ChoaStrategy::Choa1) {
        switch (group) {
        case ChimpGroup::One:
            return 1.95 - 2.0 * std::pow(td, 0.25) / std::cbrt(Td);
        case ChimpGroup::Two:
            return 1.85 - 3.0 * std::cbrt(td) / std::pow(Td, 0.25);
        case ChimpGroup::Three:
            return -3.0 * ratio * ratio * ratio + 1.5;
        case ChimpGroup::Four:
            return -2.0 * ratio * ratio * ratio + 1.5;
        }
    } else {
        switch (group) {
        case ChimpGroup::One: {
            // log(t)/log(T); a single-iteration run pins the endpoint value.
            const double lr = (T == 1) ? 1.0 : std::log(td) / std::log(Td);
            return 2.5 - 2.0 * lr;
        }
        case ChimpGroup::Two:
            return -2.0 * ratio * ratio * ratio + 2.5;
        case ChimpGroup::Three: {
            const double e = 4.0 * ratio;
            return 0.5 + 2.0 * std::exp(-e * e);
        }
        case ChimpGroup::Four:
            return 2.5 + 2.0 * ratio * ratio - 2.0 * (2.0 * ratio);
        }
    }
    throw InvalidInput("unknown chimp group");
}

CoefficientTriple make_coefficients(double f, double r1, double r2, double m) {
    return CoefficientTriple{2.0 * f * r1 - f, 2.0 * r2, m};
}

CoefficientTriple draw_coefficients(double f, Rng& rng, ChaoticStream& chaos) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    return make_coefficients(f, r1, r2, chaos.step());
}

std::vector<double> encircle(const std::vector<double>& chimp, const std::vector<double>& prey,
                             double a, double c, double m) {
    if (chimp.size() != prey.size()) {
        throw InvalidInput("encircle requires equal-length vectors");
    }
    std::vector<double> out(prey.size());
    for (std::size_t d = 0; d < out.size(); ++d) {
        const double dist = std::abs(c * prey[d] - m * chimp[d]);
        out[d] = prey[d] - a * dist;
    }
    return out;
}

std::vector<double> leader_update(const std::vector<double>& x, const LeaderSet& leaders,
                                  const std::array<CoefficientTriple, 4>& draws) {
    std::vector<double> mean(x.size(), 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
        if (leaders.position[k].size() != x.size()) {
            throw InvalidInput("leader_update requires equal-length vectors");
        }
        const auto moved =
            encircle(x, leaders.position[k], draws[k].a, draws[k].c, draws[k].m);
        for (std::size_t d = 0; d < mean.size(); ++d) {
            mean[d] += moved[d];
        }
    }
    for (double& v : mean) v *= 0.25;
    return mean;
}

ChoaState choa_init(const SearchSpace& space, const ObjectiveFn& objective,
                    const OptimizerConfig& cfg) {
    cfg.validate();
    ChoaState state{{},
                    {},
                    {},
                    LeaderSet{},
                    ChaoticStream(cfg.chaos_map),
                    Rng(cfg.seed),
                    0};
    state.positions = init_population(space, cfg.population, state.rng);
    state.groups = assign_groups(cfg.population, state.rng);
    state.losses.resize(cfg.population);
    for (std::size_t i = 0; i < cfg.population; ++i) {
        state.losses[i] = evaluate_checked(objective, state.positions[i]);
    }

    std::vector<std::size_t> order(cfg.population);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return state.losses[a] < state.losses[b];
    });
    for (std::size_t k = 0; k < 4; ++k) {
        state.leaders.position[k] = state.positions[order[k]];
        state.leaders.loss[k] = state.losses[order[k]];
    }
    return state;
}

void choa_step(ChoaState& state, const SearchSpace& space, const ObjectiveFn& objective,
               const OptimizerConfig& cfg, ChoaStrategy strategy) {
    const std::size_t t = state.iteration + 1; // 1-based schedule position
    const std::size_t T = cfg.max_iters;
    const std::size_t n = state.positions.size();

    // All draws happen chimp by chimp in index order before any evaluation,
    // so evaluation order can never change the run.
    std::vector<std::vector<double>> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = dynamic_f(strategy, state.groups[i], std::min(t, T), T);
        const double mu = state.rng.uniform();
        if (mu < 0.5) {
            std::array<CoefficientTriple, 4> draws;
            for (auto& d : draws) {
                d = draw_coefficients(f, state.rng, state.chaos);
            }
            if (std::abs(draws[0].a) < 1.0) {
                next[i] = leader_update(state.positions[i], state.leaders, draws);
            } else {
                next[i] = chaotic_position(space, state.chaos);
            }
        } else {
            next[i] = chaotic_position(space, state.chaos);
        }
        next[i] = clamp(space, std::move(next[i]));
    }

    for (std::size_t i = 0; i < n; ++i) {
        state.positions[i] = std::move(next[i]);
        state.losses[i] = evaluate_checked(objective, state.positions[i]);
    }
    refresh_leaders(state.leaders, state.positions, state.losses);
    ++state.iteration;
}

RunTrace choa_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                       const OptimizerConfig& cfg, ChoaStrategy strategy) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    ChoaState state = choa_init(space, objective, cfg);
    RunTrace trace;
    trace.evaluations = cfg.population;
    trace.best_per_iter.push_back(state.leaders.loss[0]);

    std::size_t iter = 0;
    while (!should_stop(cfg, iter, state.leaders.loss[0])) {
        choa_step(state, space, objective, cfg, strategy);
        trace.evaluations += cfg.population;
        trace.best_per_iter.push_back(state.leaders.loss[0]);
        ++iter;
    }

    trace.best_vector = state.leaders.position[0];
    trace.best_loss = state.leaders.loss[0];
    trace.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

} // namespace choaelm
