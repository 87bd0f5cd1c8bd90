/*
 * Copyright 2026 The cgt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "cgt/axioms.hpp"
#include "cgt/game.hpp"
#include "cgt/network_games.hpp"
#include "cgt/rng.hpp"
#include "cgt/search.hpp"
#include "cgt/shapley.hpp"

using namespace cgt;
using Catch::Approx;

namespace {

Game star_game() {
    Network net(9);
    const int edges[8][2] = {{1, 4}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {6, 8}, {6, 9}};
    for (const auto& e : edges) net.add_edge(e[0] - 1, e[1] - 1);
    return tabulate(connectivity_game(net));
}

// the two mirror-symmetric optima of the star: a satellite center plus the hub
const std::set<std::uint64_t> kStarBestPairs = {Coalition::of({3, 4}).mask(),
                                                Coalition::of({4, 5}).mask()};

}  // namespace

TEST_CASE("star ranking puts a center-hub pair on top") {
    const Game game = star_game();
    SearchConfig cfg;
    cfg.k = 2;
    cfg.top_m = 3;
    const auto entries = rank_groups(game, cfg);
    REQUIRE(entries.size() == 3);

    CHECK(kStarBestPairs.count(entries[0].group.mask()) == 1);
    CHECK(entries[0].value == Approx(0.5 + 47.0 / 280.0).margin(1e-12));
    CHECK(entries[0].rank == 1);

    // both center-hub pairs outrank the center pair, whose value is 1/2
    CHECK(kStarBestPairs.count(entries[1].group.mask()) == 1);
    CHECK(entries[1].value == Approx(0.5 + 47.0 / 280.0).margin(1e-12));
    CHECK(entries[2].group == Coalition::of({3, 5}));
    CHECK(entries[2].value == Approx(0.5).margin(1e-12));
}

TEST_CASE("pure bargaining games rank all groups equal in mask order") {
    const int n = 6, k = 3;
    const Game u = unanimity_game(n, Coalition::full(n));
    SearchConfig cfg;
    cfg.k = k;
    cfg.top_m = 100;
    const auto entries = rank_groups(u, cfg);
    REQUIRE(entries.size() == 20);  // C(6,3)
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CHECK(entries[i].value == Approx(1.0 / (n - k + 1)).margin(1e-12));
        if (i > 0) CHECK(entries[i - 1].group.mask() < entries[i].group.mask());
    }
}

TEST_CASE("ranking the grand coalition") {
    const Game game = star_game();
    SearchConfig cfg;
    cfg.k = 9;
    cfg.top_m = 5;
    const auto entries = rank_groups(game, cfg);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].group == game.universe());
    CHECK(entries[0].value == Approx(1.0).margin(1e-12));
}

TEST_CASE("ranking validation and budget") {
    const Game game = star_game();
    SearchConfig cfg;
    cfg.k = 20;
    CHECK_THROWS_AS(rank_groups(game, cfg), input_error);
    cfg.k = 4;
    cfg.max_groups = 10;  // C(9,4) = 126 exceeds it
    CHECK_THROWS_AS(rank_groups(game, cfg), capacity_error);
    cfg.max_groups = 1 << 20;
    cfg.top_m = 0;
    CHECK_THROWS_AS(rank_groups(game, cfg), input_error);
}

TEST_CASE("ranking order ignores constant shifts of the valuation") {
    auto eng = rng::make_engine(401);
    const Game v = random_dividend_game(7, eng);
    SearchConfig cfg;
    cfg.k = 3;
    cfg.top_m = 50;
    const auto plain = rank_groups(v, cfg, [](const Game& g, Coalition c) {
        return shapley_group_value(g, c).value;
    });
    const auto shifted = rank_groups(v, cfg, [](const Game& g, Coalition c) {
        return shapley_group_value(g, c).value + 10.0;
    });
    REQUIRE(plain.size() == shifted.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(plain[i].group == shifted[i].group);
        CHECK(shifted[i].value == Approx(plain[i].value + 10.0).margin(1e-9));
    }
}

TEST_CASE("monotone games rank supersets at least as high") {
    auto eng = rng::make_engine(409);
    const Game v = random_monotone_game(7, eng);
    SearchConfig small;
    small.k = 2;
    small.top_m = 1000;
    SearchConfig large;
    large.k = 3;
    large.top_m = 1000;
    const auto pairs = rank_groups(v, small);
    const auto triples = rank_groups(v, large);
    for (const auto& p : pairs) {
        double best_superset = -1e30;
        for (const auto& t : triples)
            if (p.group.subset_of(t.group)) best_superset = std::max(best_superset, t.value);
        CHECK(p.value <= best_superset + 1e-9);
    }
}

TEST_CASE("monte-carlo ranking is deterministic and finds the star optimum") {
    const Game game = star_game();
    SearchConfig cfg;
    cfg.k = 2;
    cfg.top_m = 5;
    cfg.method = ValueMethod::monte_carlo;
    cfg.sampler = SamplerConfig{4000, 99, 512};
    const auto a = rank_groups(game, cfg);
    const auto b = rank_groups(game, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].group == b[i].group);
        CHECK(a[i].value == b[i].value);
        REQUIRE(a[i].std_err.has_value());
        CHECK(*a[i].std_err == *b[i].std_err);
    }
    CHECK(kStarBestPairs.count(a[0].group.mask()) == 1);
}

TEST_CASE("greedy build on the star pairs a center with the hub") {
    const auto result = greedy_group(star_game(), 2);
    REQUIRE(result.steps.size() == 2);
    // seed: one of the two equally-valued satellite centers
    CHECK((result.steps[0].player == 3 || result.steps[0].player == 5));
    // second pick: the hub, whose complementarity beats the other center
    CHECK(result.steps[1].player == 4);
    CHECK(result.steps[1].value_after == Approx(0.5 + 47.0 / 280.0).margin(1e-12));
    REQUIRE(result.steps[1].independent.has_value());
    REQUIRE(result.steps[1].complementarity.has_value());
    CHECK(result.steps[1].marginal ==
          Approx(*result.steps[1].independent + *result.steps[1].complementarity).margin(1e-9));
    CHECK(kStarBestPairs.count(result.group.mask()) == 1);
}

TEST_CASE("greedy on additive games keeps the largest own worths") {
    const Game add = additive_game({0.5, 3.0, -1.0, 2.0, 0.1});
    const auto result = greedy_group(add, 3);
    CHECK(result.group == Coalition::of({0, 1, 3}));
    for (const auto& step : result.steps) {
        REQUIRE(step.complementarity.has_value());
        CHECK(*step.complementarity == Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("greedy never beats the exhaustive optimum") {
    auto eng = rng::make_engine(419);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 5 + static_cast<int>(rng::uniform_below(eng, 4));  // 5..8
        const Game v = random_dividend_game(n, eng);
        const int k = 2 + static_cast<int>(rng::uniform_below(eng, 2));  // 2..3
        const auto greedy = greedy_group(v, k);
        SearchConfig cfg;
        cfg.k = k;
        cfg.top_m = 1;
        const auto best = rank_groups(v, cfg);
        CHECK(shapley_group_value(v, greedy.group).value <= best[0].value + 1e-9);
    }
}

TEST_CASE("greedy validation") {
    const Game add = additive_game({1.0, 2.0});
    CHECK_THROWS_AS(greedy_group(add, 0), input_error);
    CHECK_THROWS_AS(greedy_group(add, 3), input_error);
    CHECK_THROWS_AS(greedy_trace_members(add, Coalition::empty()), input_error);
}

TEST_CASE("individually best players versus the best group") {
    const auto star = best_singleton_comparison(star_game(), 2);
    CHECK(star.individually_best == Coalition::of({3, 5}));  // the two centers
    CHECK(star.individual_group_value == Approx(0.5).margin(1e-12));
    CHECK(kStarBestPairs.count(star.best_group.mask()) == 1);
    CHECK(star.best_value == Approx(0.5 + 47.0 / 280.0).margin(1e-12));
    CHECK(star.diverges);

    const auto add = best_singleton_comparison(additive_game({5.0, 1.0, 3.0}), 2);
    CHECK(add.individually_best == Coalition::of({0, 2}));
    CHECK_FALSE(add.diverges);
}

TEST_CASE("divergence frequency on random games is reportable") {
    auto eng = rng::make_engine(421);
    int diverged = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        const Game v = random_dividend_game(6, eng);
        if (best_singleton_comparison(v, 2).diverges) ++diverged;
    }
    CHECK(diverged >= 0);
    CHECK(diverged <= trials);
}
