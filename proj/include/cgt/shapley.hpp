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

#ifndef CGT_SHAPLEY_HPP
#define CGT_SHAPLEY_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"

namespace cgt {

/// Arrival-order weights w[s] = s! (n-s-1)! / n!, computed by the
/// multiplicative recurrence w[s] = w[s-1] * s / (n-s). Exact to a few
/// ulp for every n this library enumerates.
inline std::vector<double> shapley_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    w[0] = 1.0 / n;
    for (int s = 1; s < n; ++s)
        w[static_cast<std::size_t>(s)] = w[static_cast<std::size_t>(s - 1)] * s / (n - s);
    return w;
}

namespace detail {

inline void check_shapley_cap(int n, const char* what) {
    if (n > kExactCap)
        throw capacity_error(std::string(what) + ": exact enumeration is capped at n = " +
                             std::to_string(kExactCap) + "; use the Monte Carlo estimator");
}

}  // namespace detail

/// Exact Shapley value of one player, by direct summation of weighted
/// marginal contributions over the subsets avoiding that player.
inline double shapley_value_of(const Game& g, int i) {
    const int n = g.player_count();
    detail::check_shapley_cap(n, "shapley value");
    if (i < 0 || i >= n) throw input_error("shapley value: player index out of range");
    const auto w = shapley_weights(n);
    double acc = 0.0;
    for (Coalition s : subsets_of(g.universe().without(i)))
        acc += w[static_cast<std::size_t>(s.size())] * (g.worth(s.with(i)) - g.worth(s));
    return acc;
}

/// Exact Shapley value of every player in one pass over the coalition
/// lattice: each worth is evaluated once and scattered to all players.
inline std::vector<double> shapley_value(const Game& g) {
    const int n = g.player_count();
    detail::check_shapley_cap(n, "shapley value");
    const auto w = shapley_weights(n);
    std::vector<double> phi(static_cast<std::size_t>(n), 0.0);
    for (Coalition s : all_coalitions(n)) {
        const double v = g.worth(s);
        if (v == 0.0) continue;
        const int size = s.size();
        const std::uint64_t m = s.mask();
        for (int i = 0; i < n; ++i) {
            if ((m >> i) & 1u)
                phi[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(size - 1)] * v;
            else
                phi[static_cast<std::size_t>(i)] -= w[static_cast<std::size_t>(size)] * v;
        }
    }
    return phi;
}

enum class ValueMethod { exact, monte_carlo };

/// Valuation of a group acting as a unit. For sampled results std_err
/// is present; exact results leave it empty.
struct GroupValueResult {
    Coalition group;
    double value = 0.0;
    ValueMethod method = ValueMethod::exact;
    std::optional<double> std_err;
    bool empty_group = false;  ///< true when the defined-zero empty-group value was returned
};

/// Exact group value: the Shapley value of the proxy player in the
/// quotient game that merges the group. The empty group is worth zero
/// by definition and is reported with a flag rather than an error.
inline GroupValueResult shapley_group_value(const Game& g, Coalition c) {
    if (c.is_empty()) return GroupValueResult{c, 0.0, ValueMethod::exact, std::nullopt, true};
    if (!c.subset_of(g.universe()))
        throw input_error("group value: group outside the player universe");
    const int m = g.player_count() - c.size() + 1;
    detail::check_shapley_cap(m, "group value");
    const MergedGame q = merge(g, c);
    return GroupValueResult{c, shapley_value_of(q.game, q.proxy), ValueMethod::exact,
                            std::nullopt, false};
}

/// No-synergy baseline: the sum of the members' individual Shapley values.
inline GroupValueResult additive_group_value(const Game& g, Coalition c) {
    if (c.is_empty()) return GroupValueResult{c, 0.0, ValueMethod::exact, std::nullopt, true};
    if (!c.subset_of(g.universe()))
        throw input_error("group value: group outside the player universe");
    const auto phi = shapley_value(g);
    double acc = 0.0;
    for (int i : c.members()) acc += phi[static_cast<std::size_t>(i)];
    return GroupValueResult{c, acc, ValueMethod::exact, std::nullopt, false};
}

/// Discrete cross-derivative of the worth for players i and j given the
/// bystander coalition s. Positive values mean i and j reinforce each
/// other on top of s.
inline double second_difference(const Game& g, int i, int j, Coalition s) {
    if (i == j) throw input_error("second difference: players must be distinct");
    if (s.contains(i) || s.contains(j))
        throw input_error("second difference: bystander coalition overlaps the pair");
    return g.worth(s.with(i).with(j)) - g.worth(s.with(j)) - g.worth(s.with(i)) + g.worth(s);
}

/// Third-order difference; invariant under permuting the three players.
inline double third_difference(const Game& g, int i, int j, int k, Coalition s) {
    if (i == j || i == k || j == k)
        throw input_error("third difference: players must be distinct");
    if (s.contains(i) || s.contains(j) || s.contains(k))
        throw input_error("third difference: bystander coalition overlaps the triple");
    return second_difference(g, j, k, s.with(i)) - second_difference(g, j, k, s);
}

/// Interaction index for a pair: the arrival-order average of their
/// second differences.
inline double average_complementarity(const Game& g, int i, int j) {
    const int n = g.player_count();
    detail::check_shapley_cap(n, "average complementarity");
    if (i == j) throw input_error("average complementarity: players must be distinct");
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw input_error("average complementarity: player index out of range");
    const auto w = shapley_weights(n);
    double acc = 0.0;
    for (Coalition s : subsets_of(g.universe().without(i).without(j)))
        acc += w[static_cast<std::size_t>(s.size())] * second_difference(g, i, j, s);
    return acc;
}

/// Marginal contribution of an entrant to a standing group, split into
/// the entrant's solo value among the outsiders and the average
/// complementarity with the merged group in the quotient game. The two
/// parts sum to the total.
struct GroupMarginal {
    double total;            ///< group value with the entrant minus without
    double independent;      ///< entrant's Shapley value in the game without the group
    double complementarity;  ///< pair interaction of proxy and entrant in the quotient
};

inline GroupMarginal marginal_group_contribution(const Game& g, Coalition c, int i) {
    if (c.is_empty())
        throw input_error("group marginal: the standing group must be nonempty");
    if (c.contains(i)) throw input_error("group marginal: entrant already in the group");
    if (!c.subset_of(g.universe()) || i < 0 || i >= g.player_count())
        throw input_error("group marginal: arguments outside the player universe");

    const double with_entrant = shapley_group_value(g, c.with(i)).value;
    const double without = shapley_group_value(g, c).value;

    const RestrictedGame rest = remove_players(g, c);
    const double independent =
        shapley_value_of(rest.game, rest.from_base[static_cast<std::size_t>(i)]);

    const MergedGame q = merge(g, c);
    const double complementarity =
        average_complementarity(q.game, q.proxy, q.from_base[static_cast<std::size_t>(i)]);

    return GroupMarginal{with_entrant - without, independent, complementarity};
}

/// Surplus of acting as one unit over splitting the members' individual
/// values, with the dividend-support sufficient condition for a
/// nonnegative surplus.
struct ProfitabilityReport {
    Coalition group;
    double group_value = 0.0;
    double additive_value = 0.0;
    double surplus = 0.0;
    /// Every coalition with a positive dividend is inside the group or
    /// meets it in at most one player; guarantees surplus >= 0.
    bool derks_tijs_sufficient = false;
};

inline ProfitabilityReport profitability(const Game& g, Coalition c) {
    const double gv = shapley_group_value(g, c).value;
    const double av = additive_group_value(g, c).value;
    bool sufficient = true;
    for (const auto& [mask, coeff] : harsanyi_dividends(g)) {
        if (coeff <= kStructEps) continue;
        const Coalition t = Coalition::from_mask(mask);
        if (!t.subset_of(c) && (t & c).size() > 1) {
            sufficient = false;
            break;
        }
    }
    return ProfitabilityReport{c, gv, av, gv - av, sufficient};
}

/// Sign pattern of the third differences over a quantifier range.
/// One-directional sufficient conditions only: a uniformly nonpositive
/// pattern certifies a profitable merge, a uniformly nonnegative one an
/// unprofitable merge, an all-zero pattern is degenerate (both bounds
/// met), and mixed signs decide nothing.
enum class SignClassification { profitable, unprofitable, degenerate, indeterminate };

inline const char* to_string(SignClassification c) {
    switch (c) {
        case SignClassification::profitable: return "profitable";
        case SignClassification::unprofitable: return "unprofitable";
        case SignClassification::degenerate: return "degenerate";
        case SignClassification::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace detail {

class SignTracker {
public:
    void observe(double d) {
        if (d > kStructEps) any_positive_ = true;
        if (d < -kStructEps) any_negative_ = true;
    }
    SignClassification classify() const {
        if (!any_positive_ && !any_negative_) return SignClassification::degenerate;
        if (!any_positive_) return SignClassification::profitable;
        if (!any_negative_) return SignClassification::unprofitable;
        return SignClassification::indeterminate;
    }

private:
    bool any_positive_ = false;
    bool any_negative_ = false;
};

}  // namespace detail

/// Classifies the merge of a pair {i, j} by the signs of the third
/// differences against every outsider.
inline SignClassification segal_pair_check(const Game& g, int i, int j) {
    const int n = g.player_count();
    detail::check_shapley_cap(n, "pair profitability check");
    if (i == j) throw input_error("pair check: players must be distinct");
    detail::SignTracker tracker;
    const Coalition pair = Coalition::of({i, j});
    for (int k = 0; k < n; ++k) {
        if (pair.contains(k)) continue;
        for (Coalition s : subsets_of(g.universe() - pair.with(k)))
            tracker.observe(third_difference(g, i, j, k, s));
    }
    return tracker.classify();
}

/// Classifies the incorporation of entrant j into a standing group c.
inline SignClassification segal_entrant_check(const Game& g, Coalition c, int j) {
    const int n = g.player_count();
    detail::check_shapley_cap(n, "entrant profitability check");
    if (c.is_empty()) throw input_error("entrant check: the standing group must be nonempty");
    if (c.contains(j)) throw input_error("entrant check: entrant already in the group");
    detail::SignTracker tracker;
    for (int i : c.members()) {
        for (int k = 0; k < n; ++k) {
            if (c.contains(k) || k == j || k == i) continue;
            const Coalition excluded = Coalition::of({i, j, k});
            for (Coalition s : subsets_of(g.universe() - excluded))
                tracker.observe(third_difference(g, i, j, k, s));
        }
    }
    return tracker.classify();
}

}  // namespace cgt

#endif  // CGT_SHAPLEY_HPP
