#include "choaelm/optimizer.hpp"

#include "choaelm/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace choaelm;

TEST_CASE("init_population stays in bounds") {
    const SearchSpace space = SearchSpace::cube(2, 0.0, 1.0);
    const auto pop = init_population(space, 3, 99);
    REQUIRE(pop.size() == 3);
    for (const auto& x : pop) {
        REQUIRE(x.size() == 2);
        for (double v : x) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("init_population is deterministic per seed") {
    const SearchSpace space = SearchSpace::cube(4, -2.0, 3.0);
    CHECK(init_population(space, 10, 5) == init_population(space, 10, 5));
    CHECK(init_population(space, 10, 5) != init_population(space, 10, 6));
}

TEST_CASE("init_population on a nearly degenerate interval") {
    const SearchSpace space = SearchSpace::cube(3, 5.0, 5.0 + 1e-13);
    for (const auto& x : init_population(space, 5, 1)) {
        for (double v : x) {
            CHECK(std::abs(v - 5.0) <= 1e-12);
        }
    }
}

TEST_CASE("clamp projects componentwise") {
    const SearchSpace space = SearchSpace::cube(2, 0.0, 1.0);
    CHECK(clamp(space, {0.5, 0.25}) == std::vector<double>{0.5, 0.25});
    CHECK(clamp(space, {-3.0, 7.0}) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("clamp is idempotent") {
    const SearchSpace space = SearchSpace::cube(3, -1.0, 2.0);
    const std::vector<double> v{-5.0, 0.3, 9.0};
    CHECK(clamp(space, clamp(space, v)) == clamp(space, v));
}

TEST_CASE("clamp rejects length mismatches") {
    const SearchSpace space = SearchSpace::cube(2, 0.0, 1.0);
    CHECK_THROWS_AS(clamp(space, {1.0, 2.0, 3.0}), InvalidInput);
}

TEST_CASE("should_stop honors both criteria") {
    OptimizerConfig cfg;
    cfg.max_iters = 10;
    CHECK(should_stop(cfg, 10, 1.0));
    CHECK(!should_stop(cfg, 9, 1.0));

    cfg.target_loss = 0.5;
    CHECK(should_stop(cfg, 0, 0.5 - 1e-9));
    CHECK(should_stop(cfg, 0, 0.5));
    CHECK(!should_stop(cfg, 0, 0.5 + 1e-9));
}

TEST_CASE("config validation") {
    OptimizerConfig cfg;
    cfg.population = 3;
    CHECK_THROWS_AS(cfg.validate(), InvalidInput);
    cfg.population = 4;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidInput);
}

TEST_CASE("search space rejects inverted bounds") {
    CHECK_THROWS_AS(SearchSpace({0.0, 1.0}, {1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(SearchSpace({}, {}), InvalidInput);
}

TEST_CASE("evaluate_checked rejects non-finite losses") {
    const ObjectiveFn bad = [](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    CHECK_THROWS_AS(evaluate_checked(bad, {1.0}), NumericError);
}
