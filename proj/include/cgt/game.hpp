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

#ifndef CGT_GAME_HPP
#define CGT_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"

namespace cgt {

/// Tolerance for equality of worths in structural predicates.
inline constexpr double kStructEps = 1e-12;

/// Cap for full 2^n enumeration (exact Shapley, dividends, predicates).
/// Beyond it only the sampling estimators are legal.
inline constexpr int kExactCap = 25;

/// Memory guard for materialized worth tables.
inline constexpr int kTableCap = 25;

/// A transferable-utility game: a player count and a worth oracle over
/// coalitions. The empty coalition is grounded at zero by construction,
/// and evaluation outside the universe is rejected. Instances are
/// immutable values; the oracle must be safe for concurrent calls.
class Game {
public:
    Game(int n, std::function<double(Coalition)> worth)
        : n_(n), worth_(std::move(worth)) {
        if (n_ < 1 || n_ > kMaxPlayers)
            throw input_error("game: player count must be in 1.." + std::to_string(kMaxPlayers));
        if (!worth_) throw input_error("game: missing worth oracle");
    }

    int player_count() const { return n_; }
    Coalition universe() const { return Coalition::full(n_); }

    double worth(Coalition s) const {
        if (!s.subset_of(universe()))
            throw std::logic_error("game: coalition outside the player universe");
        if (s.is_empty()) return 0.0;
        return worth_(s);
    }

private:
    int n_;
    std::function<double(Coalition)> worth_;
};

/// Sparse coefficients of a game in the unanimity basis, keyed by
/// coalition mask. Nonempty keys only.
using Dividends = std::map<std::uint64_t, double>;

namespace detail {

inline int table_player_count(std::size_t table_size) {
    if (table_size < 2 || (table_size & (table_size - 1)) != 0)
        throw input_error("table game: worth table size must be a power of two >= 2");
    return std::countr_zero(table_size);
}

}  // namespace detail

/// Game backed by a dense worth table indexed by coalition mask.
/// The empty slot is forced to zero.
inline Game table_game(std::vector<double> worths) {
    const int n = detail::table_player_count(worths.size());
    if (n > kTableCap)
        throw capacity_error("table game: player count exceeds table cap of " +
                             std::to_string(kTableCap));
    worths[0] = 0.0;
    auto data = std::make_shared<const std::vector<double>>(std::move(worths));
    return Game(n, [data](Coalition s) { return (*data)[s.mask()]; });
}

/// Sparse table entries; absent masks are worth zero.
inline Game table_game(int n, const std::vector<std::pair<std::uint64_t, double>>& entries) {
    if (n < 1 || n > kTableCap)
        throw capacity_error("table game: player count must be in 1.." + std::to_string(kTableCap));
    std::vector<double> worths(std::size_t{1} << n, 0.0);
    for (const auto& [mask, value] : entries) {
        if (mask >= worths.size())
            throw input_error("table game: coalition mask outside the player universe");
        worths[mask] = value;
    }
    return table_game(std::move(worths));
}

/// Unanimity game: worth 1 on supersets of s, 0 elsewhere.
inline Game unanimity_game(int n, Coalition s) {
    if (s.is_empty()) throw input_error("unanimity game: empty carrier");
    if (!s.subset_of(Coalition::full(n)))
        throw input_error("unanimity game: carrier outside the player universe");
    return Game(n, [s](Coalition t) { return s.subset_of(t) ? 1.0 : 0.0; });
}

/// Additive game: v(S) = sum of per-player values over S.
inline Game additive_game(std::vector<double> per_player) {
    const int n = static_cast<int>(per_player.size());
    auto b = std::make_shared<const std::vector<double>>(std::move(per_player));
    return Game(n, [b](Coalition s) {
        double acc = 0.0;
        for (int i : s.members()) acc += (*b)[static_cast<std::size_t>(i)];
        return acc;
    });
}

inline Game null_game(int n) {
    return Game(n, [](Coalition) { return 0.0; });
}

/// Game synthesized from unanimity-basis coefficients:
/// v(S) = sum of dividends over subsets of S.
inline Game dividend_game(int n, const Dividends& dividends) {
    auto entries = std::make_shared<std::vector<std::pair<std::uint64_t, double>>>();
    const std::uint64_t universe = Coalition::full(n).mask();
    for (const auto& [mask, coeff] : dividends) {
        if (mask == 0) throw input_error("dividend game: the empty coalition carries no dividend");
        if (mask & ~universe)
            throw input_error("dividend game: dividend key outside the player universe");
        if (coeff != 0.0) entries->emplace_back(mask, coeff);
    }
    std::shared_ptr<const std::vector<std::pair<std::uint64_t, double>>> data = entries;
    return Game(n, [data](Coalition s) {
        double acc = 0.0;
        const std::uint64_t m = s.mask();
        for (const auto& [key, coeff] : *data)
            if ((key & ~m) == 0) acc += coeff;
        return acc;
    });
}

/// Materializes any game into a dense table copy. Worth the memory only
/// when the oracle is expensive and many evaluations are coming.
inline Game tabulate(const Game& g) {
    const int n = g.player_count();
    if (n > kTableCap)
        throw capacity_error("tabulate: player count exceeds table cap of " +
                             std::to_string(kTableCap));
    std::vector<double> worths(std::size_t{1} << n);
    for (Coalition s : all_coalitions(n)) worths[s.mask()] = g.worth(s);
    return table_game(std::move(worths));
}

/// Quotient of a game under the partition {C} u singletons: the members
/// of C are replaced by one proxy player who stands for all of them.
/// Retained players are re-indexed in increasing original order and the
/// proxy takes the lowest index formerly held by a member of C.
struct MergedGame {
    Game game;                   ///< the (n - |C| + 1)-player quotient game
    Coalition merged;            ///< C, in base indices
    int proxy;                   ///< quotient index of the proxy player
    std::vector<int> to_base;    ///< quotient index -> base index (proxy -> lowest of C)
    std::vector<int> from_base;  ///< base index -> quotient index (members of C -> proxy)

    /// Expands a quotient-side coalition to base indices (proxy -> all of C).
    Coalition expand(Coalition s) const {
        std::uint64_t acc = 0;
        for (int j : s.members())
            acc |= (j == proxy) ? merged.mask() : (std::uint64_t{1} << to_base[static_cast<std::size_t>(j)]);
        return Coalition::from_mask(acc);
    }

    /// Maps base-side players to quotient indices; members of C collapse
    /// onto the proxy.
    Coalition reduce(Coalition base_side) const {
        std::uint64_t acc = 0;
        for (int i : base_side.members())
            acc |= std::uint64_t{1} << from_base[static_cast<std::size_t>(i)];
        return Coalition::from_mask(acc);
    }
};

inline MergedGame merge(const Game& g, Coalition c) {
    if (c.is_empty()) throw input_error("merge: the merged coalition must be nonempty");
    if (!c.subset_of(g.universe()))
        throw input_error("merge: coalition outside the player universe");
    const int n = g.player_count();
    const int m = n - c.size() + 1;
    const int anchor = c.lowest();

    std::vector<int> to_base;
    to_base.reserve(static_cast<std::size_t>(m));
    std::vector<int> from_base(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (i == anchor || !c.contains(i)) {
            from_base[static_cast<std::size_t>(i)] = static_cast<int>(to_base.size());
            to_base.push_back(i);
        }
    }
    for (int i = 0; i < n; ++i)
        if (c.contains(i)) from_base[static_cast<std::size_t>(i)] = from_base[static_cast<std::size_t>(anchor)];
    const int proxy = from_base[static_cast<std::size_t>(anchor)];

    auto contrib = std::make_shared<std::vector<std::uint64_t>>(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        (*contrib)[static_cast<std::size_t>(j)] =
            (j == proxy) ? c.mask() : (std::uint64_t{1} << to_base[static_cast<std::size_t>(j)]);

    Game base = g;
    Game quotient(m, [base, contrib](Coalition s) {
        std::uint64_t acc = 0;
        for (std::uint64_t rem = s.mask(); rem; rem &= rem - 1)
            acc |= (*contrib)[static_cast<std::size_t>(std::countr_zero(rem))];
        return base.worth(Coalition::from_mask(acc));
    });
    return MergedGame{std::move(quotient), c, proxy, std::move(to_base), std::move(from_base)};
}

/// Restriction of a game to the complement of `removed`: worths of
/// coalitions that avoid the removed players are unchanged. Retained
/// players are re-indexed in increasing original order.
struct RestrictedGame {
    Game game;
    Coalition removed;           ///< in base indices
    std::vector<int> to_base;    ///< restricted index -> base index
    std::vector<int> from_base;  ///< base index -> restricted index (-1 for removed)

    Coalition expand(Coalition s) const {
        std::uint64_t acc = 0;
        for (int j : s.members()) acc |= std::uint64_t{1} << to_base[static_cast<std::size_t>(j)];
        return Coalition::from_mask(acc);
    }

    /// Pre: base_side is disjoint from the removed players.
    Coalition reduce(Coalition base_side) const {
        if (base_side.intersects(removed))
            throw input_error("restriction: coalition touches removed players");
        std::uint64_t acc = 0;
        for (int i : base_side.members())
            acc |= std::uint64_t{1} << from_base[static_cast<std::size_t>(i)];
        return Coalition::from_mask(acc);
    }
};

inline RestrictedGame remove_players(const Game& g, Coalition removed) {
    if (!removed.subset_of(g.universe()))
        throw input_error("restriction: coalition outside the player universe");
    const int n = g.player_count();
    if (removed == g.universe())
        throw input_error("restriction: cannot remove every player");
    const int m = n - removed.size();

    std::vector<int> to_base;
    to_base.reserve(static_cast<std::size_t>(m));
    std::vector<int> from_base(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (!removed.contains(i)) {
            from_base[static_cast<std::size_t>(i)] = static_cast<int>(to_base.size());
            to_base.push_back(i);
        }
    }

    auto expand_table = std::make_shared<std::vector<std::uint64_t>>();
    expand_table->reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        expand_table->push_back(std::uint64_t{1} << to_base[static_cast<std::size_t>(j)]);

    Game base = g;
    Game sub(m, [base, expand_table](Coalition s) {
        std::uint64_t acc = 0;
        for (std::uint64_t rem = s.mask(); rem; rem &= rem - 1)
            acc |= (*expand_table)[static_cast<std::size_t>(std::countr_zero(rem))];
        return base.worth(Coalition::from_mask(acc));
    });
    return RestrictedGame{std::move(sub), removed, std::move(to_base), std::move(from_base)};
}

/// Pointwise linear combination of games over a common player set.
inline Game linear_combination(const std::vector<std::pair<double, Game>>& terms) {
    if (terms.empty()) throw input_error("linear combination: no terms");
    const int n = terms.front().second.player_count();
    for (const auto& [coeff, game] : terms) {
        (void)coeff;
        if (game.player_count() != n)
            throw input_error("linear combination: mismatched player counts");
    }
    auto data = std::make_shared<const std::vector<std::pair<double, Game>>>(terms);
    return Game(n, [data](Coalition s) {
        double acc = 0.0;
        for (const auto& [coeff, game] : *data) acc += coeff * game.worth(s);
        return acc;
    });
}

/// Strategically equivalent rescaling: w(S) = scale * v(S) + sum of
/// per-player shifts over S. Pre: scale > 0.
inline Game affine_transform(const Game& g, double scale, std::vector<double> per_player) {
    if (!(scale > 0.0)) throw input_error("affine transform: scale must be positive");
    if (static_cast<int>(per_player.size()) != g.player_count())
        throw input_error("affine transform: shift vector length must equal the player count");
    auto b = std::make_shared<const std::vector<double>>(std::move(per_player));
    Game base = g;
    return Game(g.player_count(), [base, scale, b](Coalition s) {
        double acc = scale * base.worth(s);
        for (int i : s.members()) acc += (*b)[static_cast<std::size_t>(i)];
        return acc;
    });
}

/// Harsanyi dividends of a game: the Moebius inverse of the worth
/// function, v(S) = sum of dividends over subsets of S. Exact sparse
/// result; zero coefficients are dropped.
inline Dividends harsanyi_dividends(const Game& g) {
    const int n = g.player_count();
    if (n > kExactCap)
        throw capacity_error("dividends: exact Moebius inversion is capped at n = " +
                             std::to_string(kExactCap));
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> d(size);
    for (Coalition s : all_coalitions(n)) d[s.mask()] = g.worth(s);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t m = 0; m < size; ++m)
            if (m & bit) d[m] -= d[m ^ bit];
    }
    Dividends out;
    for (std::uint64_t m = 1; m < size; ++m)
        if (d[m] != 0.0) out.emplace(m, d[m]);
    return out;
}

namespace detail {

inline void check_exact_cap(const Game& g, const char* what) {
    if (g.player_count() > kExactCap)
        throw capacity_error(std::string(what) + ": exhaustive check is capped at n = " +
                             std::to_string(kExactCap));
}

}  // namespace detail

/// True when every marginal contribution of player i is zero.
inline bool is_null_player(const Game& g, int i) {
    detail::check_exact_cap(g, "null player");
    const Coalition others = g.universe().without(i);
    for (Coalition s : subsets_of(others))
        if (std::abs(g.worth(s.with(i)) - g.worth(s)) > kStructEps) return false;
    return true;
}

/// True when every marginal contribution of player i equals v({i}).
inline bool is_dummy_player(const Game& g, int i) {
    detail::check_exact_cap(g, "dummy player");
    const double own = g.worth(Coalition::single(i));
    const Coalition others = g.universe().without(i);
    for (Coalition s : subsets_of(others))
        if (std::abs(g.worth(s.with(i)) - g.worth(s) - own) > kStructEps) return false;
    return true;
}

inline bool is_monotonic(const Game& g) {
    detail::check_exact_cap(g, "monotonicity");
    for (Coalition t : all_coalitions(g.player_count())) {
        const double vt = g.worth(t);
        for (int i : t.members())
            if (vt < g.worth(t.without(i)) - kStructEps) return false;
    }
    return true;
}

/// Exhaustive over all disjoint splits; cost grows as 3^n.
inline bool is_superadditive(const Game& g) {
    detail::check_exact_cap(g, "superadditivity");
    for (Coalition u : all_coalitions(g.player_count())) {
        if (u.size() < 2) continue;
        const double vu = g.worth(u);
        for (Coalition s : subsets_of(u)) {
            if (s.is_empty() || s == u) continue;
            if (vu < g.worth(s) + g.worth(u - s) - kStructEps) return false;
        }
    }
    return true;
}

}  // namespace cgt

#endif  // CGT_GAME_HPP
