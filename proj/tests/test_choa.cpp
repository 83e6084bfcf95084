#include "choaelm/choa.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/test_functions.hpp"

#include <doctest.h>

#include <cmath>

using namespace choaelm;

TEST_CASE("dynamic_f endpoint values") {
    // Both strategy-two curves land on 0.5 at t = T.
    CHECK(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::One, 10, 10) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::Two, 10, 10) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // Strategy one, group three goes negative at the end of the schedule.
    CHECK(dynamic_f(ChoaStrategy::Choa1, ChimpGroup::Three, 10, 10) ==
          doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("dynamic_f early-iteration values") {
    CHECK(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::One, 1, 10) ==
          doctest::Approx(2.5).epsilon(1e-12));
    CHECK(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::Three, 10, 10) ==
          doctest::Approx(0.5 + 2.0 * std::exp(-16.0)).epsilon(1e-12));
    CHECK(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::Four, 10, 10) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(dynamic_f(ChoaStrategy::Choa1, ChimpGroup::One, 11, 10), InvalidInput);
    CHECK_THROWS_AS(dynamic_f(ChoaStrategy::Choa1, ChimpGroup::One, 0, 10), InvalidInput);
    // Single-iteration schedules stay finite.
    CHECK(std::isfinite(dynamic_f(ChoaStrategy::Choa2, ChimpGroup::One, 1, 1)));
}

TEST_CASE("coefficient arithmetic") {
    CHECK(make_coefficients(0.0, 0.123, 0.9, 0.5).a == 0.0);
    CHECK(make_coefficients(1.0, 0.7, 0.5, 0.5).c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(make_coefficients(2.5, 1.0, 0.0, 0.5).a == doctest::Approx(2.5).epsilon(1e-12));
    // r1 = 0.5 pins a to exactly zero for any f.
    CHECK(make_coefficients(1.7, 0.5, 0.3, 0.9).a == 0.0);
}

TEST_CASE("encircle with a = 0 returns the prey exactly") {
    const std::vector<double> chimp{3.0, -2.0, 0.5};
    const std::vector<double> prey{1.0, 4.0, -0.25};
    CHECK(encircle(chimp, prey, 0.0, 1.7, 0.3) == prey);
}

TEST_CASE("encircle at the prey with unit coefficients stays put") {
    const std::vector<double> prey{2.0, -1.0};
    CHECK(encircle(prey, prey, 1.0, 1.0, 1.0) == prey);
}

TEST_CASE("encircle hand case") {
    const std::vector<double> prey{1.0, 0.0};
    const std::vector<double> chimp{0.0, 1.0};
    const auto out = encircle(chimp, prey, 1.0, 1.0, 1.0);
    CHECK(out[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(encircle({1.0}, {1.0, 2.0}, 1.0, 1.0, 1.0), InvalidInput);
}

namespace {

LeaderSet one_d_leaders(double l1, double l2, double l3, double l4) {
    LeaderSet leaders;
    leaders.position = {std::vector<double>{l1}, std::vector<double>{l2},
                        std::vector<double>{l3}, std::vector<double>{l4}};
    leaders.loss = {0.0, 1.0, 2.0, 3.0};
    return leaders;
}

} // namespace

TEST_CASE("leader_update with zero a recovers the leader mean") {
    const auto leaders = one_d_leaders(4.0, 2.0, 0.0, -2.0);
    std::array<CoefficientTriple, 4> draws;
    draws.fill(CoefficientTriple{0.0, 1.0, 1.0});
    const auto out = leader_update({1.0}, leaders, draws);
    CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-12)); // (4+2+0-2)/4

    // All leaders equal: the mean is that leader.
    const auto same = one_d_leaders(3.0, 3.0, 3.0, 3.0);
    CHECK(leader_update({-7.0}, same, draws)[0] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("leader_update hand oracle in one dimension") {
    // leaders (4, 2, 0, -2), x = 1, all c = m = 1, all a = 1:
    //   d_k = |leader_k - 1| = (3, 1, 1, 3)
    //   x_k = leader_k - d_k = (1, 1, -1, -5)
    //   mean = -1
    const auto leaders = one_d_leaders(4.0, 2.0, 0.0, -2.0);
    std::array<CoefficientTriple, 4> draws;
    draws.fill(CoefficientTriple{1.0, 1.0, 1.0});
    const auto out = leader_update({1.0}, leaders, draws);

    double oracle = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double leader = leaders.position[static_cast<std::size_t>(k)][0];
        oracle += leader - std::abs(1.0 * leader - 1.0 * 1.0);
    }
    oracle /= 4.0;
    CHECK(oracle == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(out[0] == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("choa_step keeps leaders sorted and never worse") {
    const SearchSpace space = SearchSpace::cube(4, -10.0, 10.0);
    OptimizerConfig cfg;
    cfg.population = 12;
    cfg.max_iters = 30;
    cfg.seed = 5;
    ChoaState state = choa_init(space, sphere, cfg);
    auto previous = state.leaders.loss;
    for (std::size_t i = 0; i < cfg.max_iters; ++i) {
        choa_step(state, space, sphere, cfg, ChoaStrategy::Choa1);
        for (int k = 0; k < 3; ++k) {
            CHECK(state.leaders.loss[static_cast<std::size_t>(k)] <=
                  state.leaders.loss[static_cast<std::size_t>(k) + 1]);
        }
        for (int k = 0; k < 4; ++k) {
            CHECK(state.leaders.loss[static_cast<std::size_t>(k)] <=
                  previous[static_cast<std::size_t>(k)]);
        }
        previous = state.leaders.loss;
    }
}

TEST_CASE("choa groups partition the population evenly") {
    const SearchSpace space = SearchSpace::cube(2, -1.0, 1.0);
    OptimizerConfig cfg;
    cfg.population = 10;
    cfg.seed = 3;
    const ChoaState state = choa_init(space, sphere, cfg);
    std::array<int, 4> counts{};
    for (ChimpGroup g : state.groups) counts[static_cast<std::size_t>(g)]++;
    int lo = counts[0], hi = counts[0];
    for (int c : counts) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(lo + 1 >= hi);
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 10);
}

TEST_CASE("choa_optimize records one step when max_iters is one") {
    const SearchSpace space = SearchSpace::cube(3, -5.0, 5.0);
    OptimizerConfig cfg;
    cfg.population = 8;
    cfg.max_iters = 1;
    const RunTrace trace = choa_optimize(space, sphere, cfg);
    CHECK(trace.iterations() == 1);
    CHECK(trace.evaluations == 8 + 8);
}

TEST_CASE("choa_optimize without a target runs to max_iters") {
    const SearchSpace space = SearchSpace::cube(3, -5.0, 5.0);
    OptimizerConfig cfg;
    cfg.population = 8;
    cfg.max_iters = 7;
    const RunTrace trace = choa_optimize(space, sphere, cfg);
    CHECK(trace.iterations() == 7);
    CHECK(trace.evaluations == 8 * 8);
}

TEST_CASE("choa_optimize stops early once the target loss is reached") {
    const SearchSpace space = SearchSpace::cube(2, -5.0, 5.0);
    OptimizerConfig cfg;
    cfg.population = 8;
    cfg.max_iters = 500;
    cfg.target_loss = 1.0; // generous for a 2-D sphere
    const RunTrace trace = choa_optimize(space, sphere, cfg);
    CHECK(trace.iterations() < 500);
    CHECK(trace.best_loss <= 1.0);
}

TEST_CASE("choa runs are deterministic per seed, strategy and map") {
    const SearchSpace space = SearchSpace::cube(4, -10.0, 10.0);
    OptimizerConfig cfg;
    cfg.population = 10;
    cfg.max_iters = 20;
    cfg.seed = 12;
    cfg.chaos_map = ChaoticMapKind::Circle;
    const RunTrace a = choa_optimize(space, sphere, cfg, ChoaStrategy::Choa2);
    const RunTrace b = choa_optimize(space, sphere, cfg, ChoaStrategy::Choa2);
    CHECK(a.best_per_iter == b.best_per_iter);
    CHECK(a.best_vector == b.best_vector);

    const RunTrace c = choa_optimize(space, sphere, cfg, ChoaStrategy::Choa1);
    CHECK(a.best_per_iter != c.best_per_iter);
}

TEST_CASE("choa trace is non-increasing and in-bounds") {
    const SearchSpace space = SearchSpace::cube(5, -10.0, 10.0);
    OptimizerConfig cfg;
    cfg.population = 20;
    cfg.max_iters = 50;
    cfg.seed = 9;
    for (ChoaStrategy strategy : {ChoaStrategy::Choa1, ChoaStrategy::Choa2}) {
        const RunTrace trace = choa_optimize(space, sphere, cfg, strategy);
        for (std::size_t i = 1; i < trace.best_per_iter.size(); ++i) {
            CHECK(trace.best_per_iter[i] <= trace.best_per_iter[i - 1]);
        }
        for (double v : trace.best_vector) {
            CHECK(v >= -10.0);
            CHECK(v <= 10.0);
        }
    }
}

TEST_CASE("choa converges on the sphere (spot check)") {
    const SearchSpace space = SearchSpace::cube(5, -10.0, 10.0);
    OptimizerConfig cfg;
    cfg.population = 50;
    cfg.max_iters = 200;
    cfg.seed = 1;
    const RunTrace trace = choa_optimize(space, sphere, cfg, ChoaStrategy::Choa1);
    CHECK(trace.best_loss < 1e-2);
}

TEST_CASE("choa aborts on a non-finite objective") {
    const SearchSpace space = SearchSpace::cube(2, -1.0, 1.0);
    OptimizerConfig cfg;
    cfg.population = 4;
    cfg.max_iters = 2;
    const ObjectiveFn bad = [](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(choa_optimize(space, bad, cfg), NumericError);
}

TEST_CASE("strategy names round-trip") {
    CHECK(choa_strategy_from_name("choa1") == ChoaStrategy::Choa1);
    CHECK(choa_strategy_from_name("choa2") == ChoaStrategy::Choa2);
    CHECK(!choa_strategy_from_name("choa3").has_value());
}
