#pragma once

#include "choaelm/optimizer.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace choaelm {

/// The two published schedule families for the f coefficient.
enum class ChoaStrategy { Choa1, Choa2 };

/// Schedule group a chimp is assigned to for the whole run. The four hunting
/// roles (attacker, barrier, chaser, driver) are separate: they go to the four
/// best-ranked solutions each iteration regardless of group.
enum class ChimpGroup { One, Two, Three, Four };

std::string_view choa_strategy_name(ChoaStrategy s);
std::optional<ChoaStrategy> choa_strategy_from_name(std::string_view name);

/// f coefficient for a group at iteration t of T (both 1-based, 1 <= t <= T).
double dynamic_f(ChoaStrategy strategy, ChimpGroup group, std::size_t t, std::size_t T);

struct CoefficientTriple {
    double a;
    double c;
    double m;
};

/// a = 2*f*r1 - f, c = 2*r2; pure so the arithmetic is directly testable.
CoefficientTriple make_coefficients(double f, double r1, double r2, double m);

/// Draw r1, r2 from the rng and m from the chaotic stream, in that order.
CoefficientTriple draw_coefficients(double f, Rng& rng, ChaoticStream& chaos);

/// Driving/encircling move: d = |c*prey - m*chimp| componentwise,
/// result = prey - a*d.
std::vector<double> encircle(const std::vector<double>& chimp, const std::vector<double>& prey,
                             double a, double c, double m);

/// The four current guides in rank order: attacker (best), barrier, chaser,
/// driver, with their losses.
struct LeaderSet {
    std::array<std::vector<double>, 4> position;
    std::array<double, 4> loss;
};

/// Mean of the four guide-relative moves, one coefficient triple per guide.
std::vector<double> leader_update(const std::vector<double>& x, const LeaderSet& leaders,
                                  const std::array<CoefficientTriple, 4>& draws);

struct ChoaState {
    std::vector<std::vector<double>> positions;
    std::vector<double> losses;
    std::vector<ChimpGroup> groups;
    LeaderSet leaders;
    ChaoticStream chaos;
    Rng rng;
    std::size_t iteration = 0;
};

ChoaState choa_init(const SearchSpace& space, const ObjectiveFn& objective,
                    const OptimizerConfig& cfg);

/// One synchronous iteration: every chimp moves against the previous leaders,
/// positions are clamped and re-evaluated, leaders are refreshed elitistly.
void choa_step(ChoaState& state, const SearchSpace& space, const ObjectiveFn& objective,
               const OptimizerConfig& cfg, ChoaStrategy strategy);

RunTrace choa_optimize(const SearchSpace& space, const ObjectiveFn& objective,
                       const OptimizerConfig& cfg, ChoaStrategy strategy = ChoaStrategy::Choa1);

} // namespace choaelm
