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

#include "cgt/axioms.hpp"
#include "cgt/game.hpp"
#include "cgt/shapley.hpp"

using namespace cgt;
using Catch::Approx;

namespace {

SuiteSpec quick_suite() {
    SuiteSpec spec;
    spec.n_min = 3;
    spec.n_max = 6;
    spec.games_per_n = 20;
    spec.seed = 314;
    return spec;
}

}  // namespace

TEST_CASE("property codes round-trip") {
    for (Property p : kAllProperties) {
        const auto parsed = parse_property(property_code(p));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == p);
    }
    CHECK_FALSE(parse_property("P14").has_value());
}

TEST_CASE("every functional is pinned at zero on the empty group") {
    const Game u = unanimity_game(3, Coalition::of({0, 1}));
    for (const auto& fn : {shapley_group_functional(), additive_group_functional(),
                           counterexample_alpha(0.4), counterexample_shift(2.0),
                           counterexample_product()})
        CHECK(fn(u, Coalition::empty()) == 0.0);
}

TEST_CASE("the merged-game group value passes every suite") {
    const auto fn = shapley_group_functional();
    const auto spec = quick_suite();
    for (const auto& report : check_all_properties(fn, spec)) {
        INFO(property_code(report.id) << " " << property_name(report.id));
        CHECK(report.pass);
        CHECK(report.instances > 0);
    }
}

TEST_CASE("alpha functional: closed-form spot checks") {
    const auto fn = counterexample_alpha(0.5);

    // a null outsider picks up alpha^n
    const Game u = unanimity_game(3, Coalition::of({0, 1}));
    CHECK(fn(u, Coalition::single(2)) == Approx(std::pow(0.5, 3)).margin(1e-12));

    // carrier member in the group: 1/(s - overlap + 1) plus the tail
    CHECK(fn(u, Coalition::single(0)) == Approx(0.5 + 0.125).margin(1e-12));

    CHECK_THROWS_AS(counterexample_alpha(0.0), input_error);
    CHECK_THROWS_AS(counterexample_alpha(1.0), input_error);
}

TEST_CASE("shift functional agrees with the group value on protected games") {
    const auto fn = counterexample_shift(1.0);
    const Game grand = unanimity_game(4, Coalition::full(4));
    for (Coalition c : all_coalitions(4)) {
        if (c.is_empty()) continue;
        CHECK(fn(grand, c) == Approx(shapley_group_value(grand, c).value).margin(1e-12));
    }
    // a game with a null player is also left alone
    const Game with_null = unanimity_game(4, Coalition::of({0, 1}));
    CHECK(fn(with_null, Coalition::of({0, 1})) ==
          Approx(shapley_group_value(with_null, Coalition::of({0, 1})).value).margin(1e-12));
    // otherwise the constant shows up
    const Game mixed = tabulate(dividend_game(
        3, Dividends{{0b011, 1.0}, {0b101, 1.0}, {0b110, 1.0}}));
    CHECK(fn(mixed, Coalition::single(0)) ==
          Approx(shapley_group_value(mixed, Coalition::single(0)).value + 1.0).margin(1e-12));

    CHECK_THROWS_AS(counterexample_shift(0.0), input_error);
}

TEST_CASE("product functional: appendix-style spot checks") {
    const auto fn = counterexample_product();
    const Game u = unanimity_game(3, Coalition::of({0, 1}));
    // group {1,3} straddles the carrier {1,2}: overlap 1, remainder 1
    CHECK(fn(u, Coalition::of({0, 2})) == Approx(1.0).margin(1e-12));
    CHECK(fn(u, Coalition::of({0, 1})) == Approx(1.0).margin(1e-12));   // carrier inside
    CHECK(fn(u, Coalition::single(2)) == Approx(0.0).margin(1e-12));    // disjoint
    const Game grand = unanimity_game(3, Coalition::full(3));
    CHECK(fn(grand, Coalition::single(1)) == Approx(1.0 / 3.0).margin(1e-12));
}

TEST_CASE("each deviant functional fails exactly its designated axiom") {
    const auto spec = quick_suite();
    const std::array<Property, 4> core = {Property::null_player, Property::linearity,
                                          Property::balanced_contributions,
                                          Property::bargaining_symmetry};

    struct Expectation {
        GroupValueFunctional fn;
        Property designated;
    };
    const Expectation cases[] = {
        {counterexample_alpha(0.5), Property::null_player},
        {counterexample_shift(1.0), Property::linearity},
        {counterexample_product(), Property::balanced_contributions},
        {additive_group_functional(), Property::bargaining_symmetry},
    };
    for (const auto& c : cases) {
        for (Property p : core) {
            const auto report = check_property(c.fn, p, spec);
            INFO(c.fn.id << " on " << property_code(p));
            CHECK(report.pass == (p != c.designated));
            if (!report.pass) REQUIRE(report.witness.has_value());
        }
    }
}

TEST_CASE("the product functional's failure is the canonical witness") {
    const auto report =
        check_property(counterexample_product(), Property::balanced_contributions, quick_suite());
    REQUIRE_FALSE(report.pass);
    REQUIRE(report.witness.has_value());
    const Witness& w = *report.witness;
    CHECK(w.n == 3);
    // the game is the unanimity game on {1,2} of a three-player universe
    const std::vector<double> u12{0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(w.worths == u12);
    CHECK(w.group == Coalition::single(0));
    CHECK(w.player_i == 1);
    CHECK(w.player_j == 2);
}

TEST_CASE("additive baseline fails the bargaining value with the known gap") {
    const auto report = check_property(additive_group_functional(),
                                       Property::bargaining_symmetry, quick_suite());
    REQUIRE_FALSE(report.pass);
    REQUIRE(report.witness.has_value());
    // first failure: n=3, a two-member group valued 2/3 instead of 1/2
    CHECK(report.witness->n == 3);
    CHECK(report.witness->group.size() == 2);
    CHECK(report.witness->lhs == Approx(2.0 / 3.0).margin(1e-12));
    CHECK(report.witness->rhs == Approx(0.5).margin(1e-12));
}

TEST_CASE("characterization probe") {
    const auto good = characterization_smoke(shapley_group_functional());
    CHECK(good.all_core_pass);
    CHECK(good.agreement_checked);
    CHECK(good.agrees);

    const auto alpha = characterization_smoke(counterexample_alpha(0.5));
    CHECK_FALSE(alpha.all_core_pass);
    CHECK_FALSE(alpha.agreement_checked);
    bool alpha_null_failed = false;
    for (const auto& r : alpha.core)
        if (r.id == Property::null_player && !r.pass) alpha_null_failed = true;
    CHECK(alpha_null_failed);

    const auto additive = characterization_smoke(additive_group_functional());
    CHECK_FALSE(additive.all_core_pass);
    bool additive_spb_failed = false;
    for (const auto& r : additive.core)
        if (r.id == Property::bargaining_symmetry && !r.pass) additive_spb_failed = true;
    CHECK(additive_spb_failed);
}

TEST_CASE("generators produce what they promise") {
    auto eng = rng::make_engine(271);
    for (int trial = 0; trial < 10; ++trial) {
        CHECK(is_monotonic(random_monotone_game(5, eng)));
        const Game nonneg = random_dividend_game(5, eng, /*nonnegative=*/true);
        CHECK(is_superadditive(nonneg));
    }
}
