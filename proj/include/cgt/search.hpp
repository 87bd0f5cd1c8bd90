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

#ifndef CGT_SEARCH_HPP
#define CGT_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/estimation.hpp"
#include "cgt/game.hpp"
#include "cgt/shapley.hpp"

namespace cgt {

/// One row of a group ranking. Rows are sorted by value descending with
/// ties broken by ascending coalition mask, so output is reproducible.
struct RankingEntry {
    Coalition group;
    double value = 0.0;
    std::optional<double> std_err;
    int rank = 0;  ///< 1-based position after sorting
};

struct SearchConfig {
    int k = 1;                          ///< group size to enumerate
    int top_m = 10;                     ///< rows to keep
    ValueMethod method = ValueMethod::exact;
    SamplerConfig sampler{};            ///< used in Monte Carlo mode
    std::uint64_t max_groups = std::uint64_t{1} << 20;  ///< enumeration budget
};

namespace detail {

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<std::uint64_t>(n - k + i) / i;
    return acc;
}

inline void sort_and_rank(std::vector<RankingEntry>& entries, int top_m) {
    std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.group.mask() < b.group.mask();
    });
    if (static_cast<std::size_t>(top_m) < entries.size())
        entries.resize(static_cast<std::size_t>(top_m));
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = static_cast<int>(i) + 1;
}

}  // namespace detail

/// Ranks every size-k group under an arbitrary exact group valuation.
inline std::vector<RankingEntry> rank_groups(
    const Game& g, const SearchConfig& cfg,
    const std::function<double(const Game&, Coalition)>& evaluator) {
    const int n = g.player_count();
    if (cfg.k < 1 || cfg.k > n) throw input_error("ranking: group size out of range");
    if (cfg.top_m < 1) throw input_error("ranking: must keep at least one row");
    const std::uint64_t count = detail::binomial(n, cfg.k);
    if (count > cfg.max_groups)
        throw capacity_error("ranking: " + std::to_string(count) +
                             " groups exceed the enumeration budget of " +
                             std::to_string(cfg.max_groups));

    std::vector<Coalition> groups;
    groups.reserve(count);
    for (Coalition c : k_subsets(n, cfg.k)) groups.push_back(c);

    std::vector<RankingEntry> entries(groups.size());
    const unsigned workers = std::max(
        1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                               static_cast<unsigned>(std::min<std::size_t>(groups.size(), 16))));
    auto evaluate_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            entries[i] = RankingEntry{groups[i], evaluator(g, groups[i]), std::nullopt, 0};
    };
    if (workers == 1) {
        evaluate_range(0, groups.size());
    } else {
        std::vector<std::future<void>> tasks;
        const std::size_t chunk = (groups.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(groups.size(), lo + chunk);
            if (lo >= hi) break;
            tasks.push_back(std::async(std::launch::async, evaluate_range, lo, hi));
        }
        for (auto& t : tasks) t.get();
    }

    detail::sort_and_rank(entries, cfg.top_m);
    return entries;
}

/// Ranks every size-k group by its group value, exactly or by sampling.
/// Monte Carlo mode shares the sampler seed across groups (common random
/// permutations), so the entry list is deterministic for a fixed config.
inline std::vector<RankingEntry> rank_groups(const Game& g, const SearchConfig& cfg) {
    if (cfg.method == ValueMethod::exact) {
        const int merged = g.player_count() - cfg.k + 1;
        if (merged > kExactCap)
            throw capacity_error("ranking: exact mode needs n - k + 1 <= " +
                                 std::to_string(kExactCap) + "; use the Monte Carlo method");
        return rank_groups(g, cfg, [](const Game& game, Coalition c) {
            return shapley_group_value(game, c).value;
        });
    }

    const int n = g.player_count();
    if (cfg.k < 1 || cfg.k > n) throw input_error("ranking: group size out of range");
    if (cfg.top_m < 1) throw input_error("ranking: must keep at least one row");
    const std::uint64_t count = detail::binomial(n, cfg.k);
    if (count > cfg.max_groups)
        throw capacity_error("ranking: " + std::to_string(count) +
                             " groups exceed the enumeration budget of " +
                             std::to_string(cfg.max_groups));
    std::vector<RankingEntry> entries;
    entries.reserve(count);
    for (Coalition c : k_subsets(n, cfg.k)) {
        const Estimate e = mc_group_value(g, c, cfg.sampler);
        entries.push_back(RankingEntry{c, e.mean, e.std_err, 0});
    }
    detail::sort_and_rank(entries, cfg.top_m);
    return entries;
}

/// One step of the greedy builder: the chosen player, its marginal
/// group contribution, and (in exact mode) the contribution's split
/// into solo value and average complementarity.
struct GreedyStep {
    int player = -1;
    double marginal = 0.0;
    std::optional<double> std_err;
    std::optional<double> independent;
    std::optional<double> complementarity;
    double value_after = 0.0;  ///< group value once this player joined
};

struct GreedyResult {
    Coalition group;
    std::vector<GreedyStep> steps;
};

namespace detail {

/// Shared stepping engine: grows `chosen` to size k by repeatedly adding
/// the candidate with the largest marginal group contribution, ties
/// broken by ascending player index. Candidates come from `pool`.
inline GreedyResult greedy_build(const Game& g, int k, Coalition pool,
                                 const SamplerConfig* sampler) {
    const int n = g.player_count();
    if (k < 1 || k > pool.size())
        throw input_error("greedy: target size out of range");
    const bool exact = (sampler == nullptr);
    if (exact && n > kExactCap)
        throw capacity_error("greedy: exact mode is capped at n = " + std::to_string(kExactCap) +
                             "; pass a sampler");

    GreedyResult result;

    // seed with the best singleton: the size-one group value is the
    // individual Shapley value
    int best = -1;
    double best_value = 0.0;
    std::optional<double> best_err;
    if (exact) {
        const auto phi = shapley_value(g);
        for (int i : pool.members())
            if (best < 0 || phi[static_cast<std::size_t>(i)] > best_value) {
                best = i;
                best_value = phi[static_cast<std::size_t>(i)];
            }
    } else {
        const auto phi = mc_shapley(g, *sampler);
        for (int i : pool.members())
            if (best < 0 || phi[static_cast<std::size_t>(i)].mean > best_value) {
                best = i;
                best_value = phi[static_cast<std::size_t>(i)].mean;
                best_err = phi[static_cast<std::size_t>(i)].std_err;
            }
    }
    result.group = Coalition::single(best);
    result.steps.push_back(GreedyStep{best, best_value, best_err,
                                      exact ? std::optional<double>(best_value) : std::nullopt,
                                      exact ? std::optional<double>(0.0) : std::nullopt,
                                      best_value});

    while (result.group.size() < k) {
        const Coalition c = result.group;
        double base = 0.0, base_err = 0.0;
        if (exact) {
            base = shapley_group_value(g, c).value;
        } else {
            const Estimate e = mc_group_value(g, c, *sampler);
            base = e.mean;
            base_err = e.std_err;
        }
        int chosen = -1;
        double chosen_total = 0.0, chosen_value = 0.0, chosen_err = 0.0;
        for (int i : (pool - c).members()) {
            double value = 0.0, err = 0.0;
            if (exact) {
                value = shapley_group_value(g, c.with(i)).value;
            } else {
                const Estimate e = mc_group_value(g, c.with(i), *sampler);
                value = e.mean;
                err = e.std_err;
            }
            if (chosen < 0 || value - base > chosen_total) {
                chosen = i;
                chosen_total = value - base;
                chosen_value = value;
                chosen_err = err;
            }
        }
        GreedyStep step;
        step.player = chosen;
        step.marginal = chosen_total;
        step.value_after = chosen_value;
        if (exact) {
            const GroupMarginal parts = marginal_group_contribution(g, c, chosen);
            step.independent = parts.independent;
            step.complementarity = parts.complementarity;
        } else {
            step.std_err = std::sqrt(base_err * base_err + chosen_err * chosen_err);
        }
        result.group = c.with(chosen);
        result.steps.push_back(step);
    }
    return result;
}

}  // namespace detail

/// Greedy key-group builder over all players.
inline GreedyResult greedy_group(const Game& g, int k, const SamplerConfig* sampler = nullptr) {
    return detail::greedy_build(g, k, g.universe(), sampler);
}

/// Greedy ordering within a fixed member set; explains a given group by
/// the per-member marginal contributions along that order.
inline GreedyResult greedy_trace_members(const Game& g, Coalition members,
                                         const SamplerConfig* sampler = nullptr) {
    if (members.is_empty()) throw input_error("greedy trace: the group must be nonempty");
    return detail::greedy_build(g, members.size(), members, sampler);
}

/// Side-by-side check of the "pick the individually best k players"
/// shortcut against the true best group of size k.
struct SingletonComparison {
    Coalition individually_best;      ///< top-k players by individual value, ties by index
    double individual_group_value = 0.0;
    Coalition best_group;
    double best_value = 0.0;
    bool diverges = false;
};

inline SingletonComparison best_singleton_comparison(const Game& g, int k) {
    const int n = g.player_count();
    if (k < 1 || k > n) throw input_error("comparison: group size out of range");
    const auto phi = shapley_value(g);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&phi](int a, int b) {
        return phi[static_cast<std::size_t>(a)] > phi[static_cast<std::size_t>(b)];
    });
    Coalition individual = Coalition::empty();
    for (int i = 0; i < k; ++i) individual = individual.with(order[static_cast<std::size_t>(i)]);

    SearchConfig cfg;
    cfg.k = k;
    cfg.top_m = 1;
    const auto top = rank_groups(g, cfg);

    SingletonComparison out;
    out.individually_best = individual;
    out.individual_group_value = shapley_group_value(g, individual).value;
    out.best_group = top.front().group;
    out.best_value = top.front().value;
    out.diverges = !(out.best_group == individual);
    return out;
}

}  // namespace cgt

#endif  // CGT_SEARCH_HPP
