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

#ifndef CGT_AXIOMS_HPP
#define CGT_AXIOMS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"
#include "cgt/rng.hpp"
#include "cgt/shapley.hpp"

namespace cgt {

/// The thirteen group-value axioms, in their customary order.
enum class Property {
    coherence,                         // P1: singleton values sum to the grand group value
    dummy_player,                      // P2: a dummy entrant adds exactly its own worth
    null_player,                       // P3: a null entrant adds nothing
    anonymity,                         // P4: invariance under relabeling
    linearity,                         // P5: linear in the game
    balanced_contributions,            // P6: symmetric cross-impact of two outsiders
    bargaining_symmetry,               // P7: 1/(n-c+1) on the grand-coalition unanimity game
    coalitional_monotonicity,          // P8: raising one coalition's worth helps its subgroups
    strong_monotonicity,               // P9: dominated group marginals give a dominated value
    positivity,                        // P10: nonnegative on monotonic games
    strategic_equivalence,             // P11: equivariance under positive affine rescaling
    coalitional_strategic_equivalence, // P12: adding a disjoint unanimity term changes nothing
    fair_ranking,                      // P13: one-coalition perturbations preserve equal-size order
};

inline constexpr std::array<Property, 13> kAllProperties = {
    Property::coherence,
    Property::dummy_player,
    Property::null_player,
    Property::anonymity,
    Property::linearity,
    Property::balanced_contributions,
    Property::bargaining_symmetry,
    Property::coalitional_monotonicity,
    Property::strong_monotonicity,
    Property::positivity,
    Property::strategic_equivalence,
    Property::coalitional_strategic_equivalence,
    Property::fair_ranking,
};

inline int property_index(Property p) { return static_cast<int>(p) + 1; }

inline std::string property_code(Property p) { return "P" + std::to_string(property_index(p)); }

inline const char* property_name(Property p) {
    switch (p) {
        case Property::coherence: return "coherence";
        case Property::dummy_player: return "dummy-player";
        case Property::null_player: return "null-player";
        case Property::anonymity: return "anonymity";
        case Property::linearity: return "linearity";
        case Property::balanced_contributions: return "coalitional-balanced-contributions";
        case Property::bargaining_symmetry: return "pure-bargaining-symmetry";
        case Property::coalitional_monotonicity: return "coalitional-monotonicity";
        case Property::strong_monotonicity: return "strong-monotonicity";
        case Property::positivity: return "positivity";
        case Property::strategic_equivalence: return "strategic-equivalence";
        case Property::coalitional_strategic_equivalence:
            return "coalitional-strategic-equivalence";
        case Property::fair_ranking: return "fair-ranking";
    }
    return "?";
}

inline std::optional<Property> parse_property(std::string_view code) {
    for (Property p : kAllProperties)
        if (property_code(p) == code) return p;
    return std::nullopt;
}

/// A group valuation: any map (game, group) -> real that is zero on the
/// empty group. The wrapper pins the empty-group value so concrete
/// evaluators only ever see nonempty groups.
struct GroupValueFunctional {
    std::string id;
    std::function<double(const Game&, Coalition)> eval;

    double operator()(const Game& g, Coalition c) const {
        return c.is_empty() ? 0.0 : eval(g, c);
    }
};

inline GroupValueFunctional shapley_group_functional() {
    return {"shapley",
            [](const Game& g, Coalition c) { return shapley_group_value(g, c).value; }};
}

inline GroupValueFunctional additive_group_functional() {
    return {"additive",
            [](const Game& g, Coalition c) { return additive_group_value(g, c).value; }};
}

namespace detail {

inline double geometric_tail(double alpha, int n, int terms) {
    // sum_{k=0}^{terms-1} alpha^(n-k)
    double acc = 0.0;
    double p = std::pow(alpha, n);
    for (int k = 0; k < terms; ++k) {
        acc += p;
        p /= alpha;
    }
    return acc;
}

/// Extends a unanimity-basis definition to every game by linearity in
/// the dividends.
template <typename BasisValue>
GroupValueFunctional basis_extension(std::string id, BasisValue&& basis) {
    return {std::move(id), [basis](const Game& g, Coalition c) {
                double acc = 0.0;
                for (const auto& [mask, coeff] : harsanyi_dividends(g))
                    acc += coeff * basis(g.player_count(), Coalition::from_mask(mask), c);
                return acc;
            }};
}

inline bool has_null_player(const Game& g) {
    for (int i = 0; i < g.player_count(); ++i)
        if (is_null_player(g, i)) return true;
    return false;
}

inline bool is_grand_unanimity(const Game& g) {
    const Coalition full = g.universe();
    for (Coalition s : all_coalitions(g.player_count())) {
        const double expect = (s == full) ? 1.0 : 0.0;
        if (std::abs(g.worth(s) - expect) > kStructEps) return false;
    }
    return true;
}

}  // namespace detail

/// Counterexample that keeps every core axiom except the null-player
/// one: null entrants pick up a geometric bonus in alpha.
inline GroupValueFunctional counterexample_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw input_error("alpha counterexample: alpha must lie strictly between 0 and 1");
    return detail::basis_extension(
        "alpha", [alpha](int n, Coalition t, Coalition c) {
            if (t == Coalition::full(n)) return 1.0 / (n - c.size() + 1);
            const int overlap = (t & c).size();
            if (overlap == 0) return detail::geometric_tail(alpha, n, c.size());
            return 1.0 / (t.size() - overlap + 1) +
                   detail::geometric_tail(alpha, n, n - t.size());
        });
}

/// Counterexample that keeps every core axiom except linearity: games
/// with no null player that are not the grand-coalition unanimity game
/// are shifted by a constant.
inline GroupValueFunctional counterexample_shift(double k) {
    if (k == 0.0) throw input_error("shift counterexample: the shift must be nonzero");
    return {"shift", [k](const Game& g, Coalition c) {
                const double base = shapley_group_value(g, c).value;
                if (detail::has_null_player(g) || detail::is_grand_unanimity(g)) return base;
                return base + k;
            }};
}

/// Counterexample that keeps every core axiom except balanced
/// contributions: straddling groups score the overlap product.
inline GroupValueFunctional counterexample_product() {
    return detail::basis_extension("product", [](int n, Coalition t, Coalition c) {
        if (t == Coalition::full(n)) return 1.0 / (n - c.size() + 1);
        const int overlap = (t & c).size();
        if (overlap == 0) return 0.0;
        if (t.subset_of(c)) return 1.0;
        return static_cast<double>(overlap) * (t - c).size();
    });
}

/// Suite configuration: the n range quantifiers are exhausted over, the
/// number of seeded random dividend games per n (the unanimity basis is
/// always included), and the comparison tolerance.
struct SuiteSpec {
    int n_min = 3;
    int n_max = 8;
    int games_per_n = 100;
    std::uint64_t seed = 2026;
    double tolerance = 1e-9;
};

/// A reproducible violation: the game(s) as dense worth tables plus the
/// coalitions and players instantiating the failed condition.
struct Witness {
    int n = 0;
    std::vector<double> worths;         ///< primary game
    std::vector<double> worths_second;  ///< second game, when the property pairs games
    Coalition group;
    Coalition group_second;
    int player_i = -1;
    int player_j = -1;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

/// Verdict of one sampled-universal suite. A pass means no counterexample
/// was found across the recorded number of instances, nothing stronger.
struct PropertyReport {
    Property id = Property::coherence;
    bool pass = false;
    std::uint64_t instances = 0;
    double tolerance = 0.0;
    std::optional<Witness> witness;
};

/// Random game in dividend form, materialized to a table. Each nonempty
/// coalition carries a dividend with the given density; at least one is
/// always present.
inline Game random_dividend_game(int n, std::mt19937_64& eng, bool nonnegative = false,
                                 double density = 0.35) {
    Dividends d;
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t m = 1; m <= top; ++m) {
        if (rng::unit_interval(eng) < density)
            d[m] = nonnegative ? rng::uniform_range(eng, 0.05, 1.0)
                               : rng::uniform_range(eng, -1.0, 1.0);
    }
    if (d.empty()) d[1 + rng::uniform_below(eng, top)] = 1.0;
    return tabulate(dividend_game(n, d));
}

/// Random monotonic game: nonnegative worths swept upward along the
/// subset lattice.
inline Game random_monotone_game(int n, std::mt19937_64& eng) {
    std::vector<double> w(std::size_t{1} << n, 0.0);
    for (std::uint64_t m = 1; m < w.size(); ++m) w[m] = rng::uniform_range(eng, 0.0, 1.0);
    for (std::uint64_t m = 1; m < w.size(); ++m)
        for (std::uint64_t rem = m; rem; rem &= rem - 1)
            w[m] = std::max(w[m], w[m ^ (rem & (~rem + 1))]);
    return table_game(std::move(w));
}

namespace detail {

inline std::vector<double> worths_of(const Game& g) {
    std::vector<double> w(std::size_t{1} << g.player_count());
    for (Coalition s : all_coalitions(g.player_count())) w[s.mask()] = g.worth(s);
    return w;
}

inline std::vector<double> value_table(const GroupValueFunctional& fn, const Game& g) {
    std::vector<double> t(std::size_t{1} << g.player_count());
    for (Coalition c : all_coalitions(g.player_count())) t[c.mask()] = fn(g, c);
    return t;
}

/// Mask re-indexing after removing one player. Pre: bit j is clear.
inline std::uint64_t drop_player_bit(std::uint64_t mask, int j) {
    const std::uint64_t low = mask & ((std::uint64_t{1} << j) - 1);
    return low | ((mask >> (j + 1)) << j);
}

/// Extends a game with one fresh dummy player of the given own worth at
/// index `pos`; existing players above shift up by one.
inline Game with_dummy_player(const Game& base, int pos, double own) {
    const int n = base.player_count() + 1;
    Game inner = base;
    return Game(n, [inner, pos, own](Coalition s) {
        const std::uint64_t m = s.mask();
        const std::uint64_t compressed = drop_player_bit(m & ~(std::uint64_t{1} << pos), pos);
        double v = inner.worth(Coalition::from_mask(compressed));
        if (s.contains(pos)) v += own;
        return v;
    });
}

/// Relabeled game in which new index pi[i] plays old index i's role.
inline Game permuted_game(const Game& g, const std::vector<int>& pi) {
    const int n = g.player_count();
    std::vector<double> w(std::size_t{1} << n);
    for (Coalition s : all_coalitions(n)) {
        std::uint64_t t = 0;
        for (int i : s.members()) t |= std::uint64_t{1} << pi[static_cast<std::size_t>(i)];
        w[t] = g.worth(s);
    }
    return table_game(std::move(w));
}

inline std::mt19937_64 suite_engine(const SuiteSpec& spec, Property p, int n) {
    return rng::make_engine(
        rng::derive_stream(spec.seed, static_cast<std::uint64_t>(property_index(p)) * 131 + n));
}

/// The standard game list for one n: the full unanimity basis in mask
/// order, then the seeded random dividend games.
inline std::vector<Game> standard_games(int n, std::mt19937_64& eng, int randoms) {
    std::vector<Game> games;
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;
    games.reserve(top + static_cast<std::uint64_t>(randoms));
    for (std::uint64_t m = 1; m <= top; ++m)
        games.push_back(unanimity_game(n, Coalition::from_mask(m)));
    for (int r = 0; r < randoms; ++r) games.push_back(random_dividend_game(n, eng));
    return games;
}

struct SuiteRun {
    PropertyReport report;

    explicit SuiteRun(Property p, double tolerance) {
        report.id = p;
        report.pass = true;
        report.tolerance = tolerance;
    }

    bool require(bool ok, const Witness& w) {
        ++report.instances;
        if (!ok && report.pass) {
            report.pass = false;
            report.witness = w;
        }
        return report.pass;
    }
};

}  // namespace detail

/// Runs one axiom suite against a group valuation. Universal claims are
/// sampled: the basis games are exhausted, random games and perturbations
/// are seeded, and inner quantifiers (groups, player pairs) are exhausted
/// up to the spec's n range.
inline PropertyReport check_property(const GroupValueFunctional& fn, Property prop,
                                     const SuiteSpec& spec) {
    using detail::SuiteRun;
    const double tol = spec.tolerance;
    SuiteRun run(prop, tol);

    for (int n = spec.n_min; n <= spec.n_max && run.report.pass; ++n) {
        auto eng = detail::suite_engine(spec, prop, n);
        switch (prop) {
            case Property::coherence: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    double singles = 0.0;
                    for (int i = 0; i < n; ++i) singles += fn(g, Coalition::single(i));
                    const double grand = fn(g, g.universe());
                    if (!run.require(std::abs(singles - grand) <= tol,
                                     Witness{n, detail::worths_of(g), {}, g.universe(),
                                             Coalition::empty(), -1, -1, singles, grand,
                                             "singleton values do not sum to the grand group value"}))
                        break;
                }
                break;
            }

            case Property::dummy_player:
            case Property::null_player: {
                const bool null_case = (prop == Property::null_player);
                auto games = detail::standard_games(n, eng, 0);
                for (int r = 0; r < spec.games_per_n; ++r) {
                    // inject a dummy (or null) player into a smaller random game
                    Game base = random_dividend_game(n - 1, eng);
                    const int pos = static_cast<int>(rng::uniform_below(eng, n));
                    const double own = null_case ? 0.0 : rng::uniform_range(eng, -1.0, 1.0);
                    games.push_back(tabulate(detail::with_dummy_player(base, pos, own)));
                }
                for (const Game& g : games) {
                    for (int i = 0; i < n && run.report.pass; ++i) {
                        if (null_case ? !is_null_player(g, i) : !is_dummy_player(g, i)) continue;
                        const double own = null_case ? 0.0 : g.worth(Coalition::single(i));
                        for (Coalition c : subsets_of(g.universe().without(i))) {
                            const double lhs = fn(g, c.with(i));
                            const double rhs = fn(g, c) + own;
                            if (!run.require(std::abs(lhs - rhs) <= tol,
                                             Witness{n, detail::worths_of(g), {}, c,
                                                     Coalition::empty(), i, -1, lhs, rhs,
                                                     null_case
                                                         ? "null entrant changed the group value"
                                                         : "dummy entrant did not add its own worth"}))
                                break;
                        }
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::anonymity: {
                std::vector<int> pi(static_cast<std::size_t>(n));
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    for (int rep = 0; rep < 3 && run.report.pass; ++rep) {
                        std::iota(pi.begin(), pi.end(), 0);
                        if (rep > 0) rng::shuffle(pi, eng);
                        const Game relabeled = detail::permuted_game(g, pi);
                        for (Coalition c : all_coalitions(n)) {
                            std::uint64_t pc = 0;
                            for (int i : c.members())
                                pc |= std::uint64_t{1} << pi[static_cast<std::size_t>(i)];
                            const double lhs = fn(relabeled, Coalition::from_mask(pc));
                            const double rhs = fn(g, c);
                            if (!run.require(std::abs(lhs - rhs) <= tol,
                                             Witness{n, detail::worths_of(g),
                                                     detail::worths_of(relabeled), c,
                                                     Coalition::from_mask(pc), -1, -1, lhs, rhs,
                                                     "value changed under relabeling"}))
                                break;
                        }
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::linearity: {
                auto games = detail::standard_games(n, eng, spec.games_per_n);
                for (std::size_t gi = 0; gi + 1 < games.size() && run.report.pass; ++gi) {
                    const Game& v = games[gi];
                    const Game& w = games[gi + 1];
                    const double a1 = rng::uniform_range(eng, -2.0, 2.0);
                    const double a2 = rng::uniform_range(eng, -2.0, 2.0);
                    std::vector<double> mixed(std::size_t{1} << n);
                    for (Coalition s : all_coalitions(n))
                        mixed[s.mask()] = a1 * v.worth(s) + a2 * w.worth(s);
                    const Game lc = table_game(std::move(mixed));
                    for (Coalition c : all_coalitions(n)) {
                        const double lhs = fn(lc, c);
                        const double rhs = a1 * fn(v, c) + a2 * fn(w, c);
                        if (!run.require(std::abs(lhs - rhs) <= tol,
                                         Witness{n, detail::worths_of(v), detail::worths_of(w),
                                                 c, Coalition::empty(), -1, -1, lhs, rhs,
                                                 "value is not linear in the game"}))
                            break;
                    }
                }
                break;
            }

            case Property::balanced_contributions: {
                // Quantified over nonempty groups; the empty-group case is
                // pinned at zero by definition and checked elsewhere.
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    const auto tv = detail::value_table(fn, g);
                    std::vector<std::vector<double>> rt(static_cast<std::size_t>(n));
                    for (int j = 0; j < n; ++j)
                        rt[static_cast<std::size_t>(j)] = detail::value_table(
                            fn, remove_players(g, Coalition::single(j)).game);
                    for (Coalition c : all_coalitions(n)) {
                        if (c.is_empty() || c == g.universe()) continue;
                        const std::uint64_t cm = c.mask();
                        for (int i = 0; i < n && run.report.pass; ++i) {
                            if (c.contains(i)) continue;
                            for (int j = i + 1; j < n; ++j) {
                                if (c.contains(j)) continue;
                                const std::uint64_t ci = cm | (std::uint64_t{1} << i);
                                const std::uint64_t cj = cm | (std::uint64_t{1} << j);
                                const double lhs =
                                    (tv[ci] - tv[cm]) -
                                    (rt[static_cast<std::size_t>(j)]
                                        [detail::drop_player_bit(ci, j)] -
                                     rt[static_cast<std::size_t>(j)]
                                        [detail::drop_player_bit(cm, j)]);
                                const double rhs =
                                    (tv[cj] - tv[cm]) -
                                    (rt[static_cast<std::size_t>(i)]
                                        [detail::drop_player_bit(cj, i)] -
                                     rt[static_cast<std::size_t>(i)]
                                        [detail::drop_player_bit(cm, i)]);
                                if (!run.require(
                                        std::abs(lhs - rhs) <= tol,
                                        Witness{n, detail::worths_of(g), {}, c,
                                                Coalition::empty(), i, j, lhs, rhs,
                                                "unbalanced cross-contributions of two outsiders"}))
                                    break;
                            }
                        }
                        if (!run.report.pass) break;
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::bargaining_symmetry: {
                const Game grand = unanimity_game(n, Coalition::full(n));
                for (Coalition c : all_coalitions(n)) {
                    if (c.is_empty()) continue;
                    const double lhs = fn(grand, c);
                    const double rhs = 1.0 / (n - c.size() + 1);
                    if (!run.require(std::abs(lhs - rhs) <= tol,
                                     Witness{n, detail::worths_of(grand), {}, c,
                                             Coalition::empty(), -1, -1, lhs, rhs,
                                             "wrong value on the grand-coalition unanimity game"}))
                        break;
                }
                break;
            }

            case Property::coalitional_monotonicity: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    auto worths = detail::worths_of(g);
                    for (int rep = 0; rep < 3 && run.report.pass; ++rep) {
                        const std::uint64_t t =
                            1 + rng::uniform_below(eng, (std::uint64_t{1} << n) - 1);
                        const double delta = rng::uniform_range(eng, 0.1, 2.0);
                        auto bumped = worths;
                        bumped[t] += delta;
                        const Game w = table_game(std::vector<double>(bumped));
                        for (Coalition c : subsets_of(Coalition::from_mask(t))) {
                            if (c.is_empty()) continue;
                            const double lhs = fn(g, c);
                            const double rhs = fn(w, c);
                            if (!run.require(lhs <= rhs + tol,
                                             Witness{n, worths, bumped, c,
                                                     Coalition::from_mask(t), -1, -1, lhs, rhs,
                                                     "raising one coalition's worth lowered a subgroup's value"}))
                                break;
                        }
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::strong_monotonicity: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    auto worths = detail::worths_of(g);
                    for (int rep = 0; rep < 3 && run.report.pass; ++rep) {
                        const Coalition c = Coalition::from_mask(
                            1 + rng::uniform_below(eng, (std::uint64_t{1} << n) - 1));
                        auto bumped = worths;
                        for (std::uint64_t m = 1; m < bumped.size(); ++m)
                            if (m & c.mask()) bumped[m] += rng::uniform_range(eng, 0.0, 1.0);
                        const Game w = table_game(std::vector<double>(bumped));
                        const double lhs = fn(g, c);
                        const double rhs = fn(w, c);
                        run.require(lhs <= rhs + tol,
                                    Witness{n, worths, bumped, c, Coalition::empty(), -1, -1,
                                            lhs, rhs,
                                            "dominated group marginals gave a larger value"});
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::positivity: {
                std::vector<Game> games = detail::standard_games(n, eng, 0);
                for (int r = 0; r < spec.games_per_n; ++r)
                    games.push_back(random_monotone_game(n, eng));
                for (const Game& g : games) {
                    for (Coalition c : all_coalitions(n)) {
                        if (c.is_empty()) continue;
                        const double value = fn(g, c);
                        if (!run.require(value >= -tol,
                                         Witness{n, detail::worths_of(g), {}, c,
                                                 Coalition::empty(), -1, -1, value, 0.0,
                                                 "negative value on a monotonic game"}))
                            break;
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::strategic_equivalence: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    const double scale = rng::uniform_range(eng, 0.2, 3.0);
                    std::vector<double> shift(static_cast<std::size_t>(n));
                    for (double& b : shift) b = rng::uniform_range(eng, -1.0, 1.0);
                    std::vector<double> scaled(std::size_t{1} << n);
                    for (Coalition s : all_coalitions(n)) {
                        double acc = scale * g.worth(s);
                        for (int i : s.members()) acc += shift[static_cast<std::size_t>(i)];
                        scaled[s.mask()] = acc;
                    }
                    const Game w = table_game(std::move(scaled));
                    for (Coalition c : all_coalitions(n)) {
                        if (c.is_empty()) continue;
                        double expected = scale * fn(g, c);
                        for (int i : c.members()) expected += shift[static_cast<std::size_t>(i)];
                        const double actual = fn(w, c);
                        if (!run.require(std::abs(actual - expected) <= tol,
                                         Witness{n, detail::worths_of(g), detail::worths_of(w),
                                                 c, Coalition::empty(), -1, -1, actual, expected,
                                                 "not equivariant under affine rescaling"}))
                            break;
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::coalitional_strategic_equivalence: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    auto worths = detail::worths_of(g);
                    for (Coalition c : all_coalitions(n)) {
                        if (c.is_empty() || c == g.universe()) continue;
                        const Coalition outside = g.universe() - c;
                        for (int rep = 0; rep < 2 && run.report.pass; ++rep) {
                            // random nonempty T disjoint from the group
                            const std::uint64_t pick =
                                1 + rng::uniform_below(
                                        eng, (std::uint64_t{1} << outside.size()) - 1);
                            std::uint64_t t = 0;
                            {
                                int bit = 0;
                                for (int i : outside.members()) {
                                    if ((pick >> bit) & 1u) t |= std::uint64_t{1} << i;
                                    ++bit;
                                }
                            }
                            const double lambda = rng::uniform_range(eng, -2.0, 2.0);
                            auto bumped = worths;
                            for (std::uint64_t m = 1; m < bumped.size(); ++m)
                                if ((t & ~m) == 0) bumped[m] += lambda;
                            const Game w = table_game(std::vector<double>(bumped));
                            const double lhs = fn(w, c);
                            const double rhs = fn(g, c);
                            run.require(std::abs(lhs - rhs) <= tol,
                                        Witness{n, worths, bumped, c, Coalition::from_mask(t),
                                                -1, -1, lhs, rhs,
                                                "a unanimity term disjoint from the group moved its value"});
                        }
                        if (!run.report.pass) break;
                    }
                    if (!run.report.pass) break;
                }
                break;
            }

            case Property::fair_ranking: {
                for (const Game& g : detail::standard_games(n, eng, spec.games_per_n)) {
                    auto worths = detail::worths_of(g);
                    for (int rep = 0; rep < 2 && run.report.pass; ++rep) {
                        std::uint64_t t = 0;
                        while (std::popcount(t) < 2)
                            t = 1 + rng::uniform_below(eng, (std::uint64_t{1} << n) - 1);
                        double delta = rng::uniform_range(eng, 0.1, 2.0);
                        if (rng::unit_interval(eng) < 0.5) delta = -delta;
                        auto bumped = worths;
                        bumped[t] += delta;
                        const Game w = table_game(std::vector<double>(bumped));
                        const Coalition tc = Coalition::from_mask(t);
                        // strict comparisons need a margin; near-ties are skipped
                        for (Coalition c1 : subsets_of(tc)) {
                            if (c1.is_empty()) continue;
                            for (Coalition c2 : subsets_of(tc)) {
                                if (c2.is_empty() || c1 == c2 || c1.size() != c2.size())
                                    continue;
                                const double before = fn(g, c1) - fn(g, c2);
                                if (before <= tol) continue;
                                const double after = fn(w, c1) - fn(w, c2);
                                if (!run.require(after > -tol,
                                                 Witness{n, worths, bumped, c1, c2, -1, -1,
                                                         before, after,
                                                         "equal-size order inside the altered coalition flipped"}))
                                    break;
                            }
                            if (!run.report.pass) break;
                        }
                    }
                    if (!run.report.pass) break;
                }
                break;
            }
        }
    }
    return run.report;
}

/// All thirteen suites, run concurrently, reported in property order.
inline std::vector<PropertyReport> check_all_properties(const GroupValueFunctional& fn,
                                                        const SuiteSpec& spec) {
    std::vector<std::future<PropertyReport>> futures;
    futures.reserve(kAllProperties.size());
    for (Property p : kAllProperties)
        futures.push_back(std::async(std::launch::async,
                                     [&fn, &spec, p] { return check_property(fn, p, spec); }));
    std::vector<PropertyReport> reports;
    reports.reserve(kAllProperties.size());
    for (auto& f : futures) reports.push_back(f.get());
    return reports;
}

/// Characterization probe: the four determining axioms on the unanimity
/// basis up to n = 6, plus — when they all hold — agreement with the
/// merged-game group value on that basis.
struct CharacterizationReport {
    std::vector<PropertyReport> core;  ///< null-player, linearity, balanced contributions, bargaining symmetry
    bool all_core_pass = false;
    bool agreement_checked = false;
    bool agrees = false;
    std::optional<Witness> disagreement;
};

inline CharacterizationReport characterization_smoke(const GroupValueFunctional& fn) {
    SuiteSpec spec;
    spec.n_min = 2;
    spec.n_max = 6;
    spec.games_per_n = 0;  // basis only
    spec.tolerance = 1e-9;

    CharacterizationReport report;
    for (Property p : {Property::null_player, Property::linearity,
                       Property::balanced_contributions, Property::bargaining_symmetry})
        report.core.push_back(check_property(fn, p, spec));
    report.all_core_pass = true;
    for (const auto& r : report.core) report.all_core_pass = report.all_core_pass && r.pass;
    if (!report.all_core_pass) return report;

    report.agreement_checked = true;
    report.agrees = true;
    for (int n = 1; n <= spec.n_max; ++n) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const Game u = unanimity_game(n, Coalition::from_mask(m));
            for (Coalition c : all_coalitions(n)) {
                const double lhs = fn(u, c);
                const double rhs = shapley_group_value(u, c).value;
                if (std::abs(lhs - rhs) > spec.tolerance) {
                    report.agrees = false;
                    report.disagreement =
                        Witness{n, detail::worths_of(u), {}, c, Coalition::empty(), -1, -1,
                                lhs, rhs, "disagrees with the merged-game group value"};
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace cgt

#endif  // CGT_AXIOMS_HPP
