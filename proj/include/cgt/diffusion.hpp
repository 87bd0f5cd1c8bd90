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

#ifndef CGT_DIFFUSION_HPP
#define CGT_DIFFUSION_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/estimation.hpp"
#include "cgt/game.hpp"
#include "cgt/rng.hpp"

namespace cgt {

/// Directed influence weights over agents 0..n-1. influence(i, j) is the
/// weight agent i assigns to agent j; each agent's incoming weights must
/// total at most one. Agent i activates once the weight of its active
/// neighbors reaches its threshold.
class InfluenceModel {
public:
    explicit InfluenceModel(int n)
        : n_(n), incoming_(static_cast<std::size_t>(n)),
          row_sum_(static_cast<std::size_t>(n), 0.0) {
        if (n < 1 || n > kMaxPlayers)
            throw input_error("influence model: agent count must be in 1.." +
                              std::to_string(kMaxPlayers));
    }

    void add_influence(int i, int j, double w) {
        check_agent(i);
        check_agent(j);
        if (i == j) throw input_error("influence model: self-influence is not allowed");
        if (w < 0.0 || !std::isfinite(w))
            throw input_error("influence model: weights must be nonnegative and finite");
        row_sum_[static_cast<std::size_t>(i)] += w;
        if (row_sum_[static_cast<std::size_t>(i)] > 1.0 + 1e-12)
            throw input_error("influence model: weights assigned by agent " + std::to_string(i) +
                              " exceed one");
        incoming_[static_cast<std::size_t>(i)].emplace_back(j, w);
    }

    int size() const { return n_; }
    const std::vector<std::pair<int, double>>& influences_of(int i) const {
        return incoming_[static_cast<std::size_t>(i)];
    }

private:
    void check_agent(int i) const {
        if (i < 0 || i >= n_) throw input_error("influence model: agent index out of range");
    }

    int n_;
    std::vector<std::vector<std::pair<int, double>>> incoming_;  // per agent: (neighbor, weight)
    std::vector<double> row_sum_;
};

namespace detail {

/// One deterministic cascade to its fixpoint (at most n rounds): an
/// inactive agent activates once its active neighbors' weight reaches
/// its threshold. Returns the active count at the fixpoint.
inline int cascade_fixpoint(const InfluenceModel& model, Coalition seeds,
                            const std::vector<double>& thresholds) {
    const int n = model.size();
    std::uint64_t active = seeds.mask();
    bool changed = true;
    while (changed) {
        changed = false;
        std::uint64_t next = active;
        for (int i = 0; i < n; ++i) {
            if ((active >> i) & 1u) continue;
            double incoming = 0.0;
            for (const auto& [j, w] : model.influences_of(i))
                if ((active >> j) & 1u) incoming += w;
            if (incoming >= thresholds[static_cast<std::size_t>(i)]) {
                next |= std::uint64_t{1} << i;
                changed = true;
            }
        }
        active = next;
    }
    return std::popcount(active);
}

inline void sample_cascades(const InfluenceModel& model, Coalition seeds, std::uint64_t runs,
                            std::uint64_t stream, double& sum, double& sumsq) {
    auto eng = rng::make_engine(stream);
    const int n = model.size();
    std::vector<double> thresholds(static_cast<std::size_t>(n));
    sum = 0.0;
    sumsq = 0.0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        // thresholds in (0, 1]: zero incoming weight never activates
        for (int i = 0; i < n; ++i)
            thresholds[static_cast<std::size_t>(i)] = rng::unit_interval_positive(eng);
        const double active = cascade_fixpoint(model, seeds, thresholds);
        sum += active;
        sumsq += active * active;
    }
}

}  // namespace detail

/// Spread estimate with its sampling error for one seed set. The stream
/// is derived from (seed, coalition), so the matching game oracle
/// returns exactly this mean.
inline Estimate cascade_estimate(const InfluenceModel& model, Coalition seeds,
                                 std::uint64_t runs, std::uint64_t seed) {
    if (runs < 2) throw input_error("cascade estimate: at least two runs are required");
    if (!seeds.subset_of(Coalition::full(model.size())))
        throw input_error("cascade estimate: seed set outside the agent universe");
    double sum = 0.0, sumsq = 0.0;
    detail::sample_cascades(model, seeds, runs, rng::derive_stream(seed, seeds.mask()), sum,
                            sumsq);
    const double mean = sum / static_cast<double>(runs);
    const double var = std::max(
        0.0, (sumsq - sum * sum / static_cast<double>(runs)) / static_cast<double>(runs - 1));
    return Estimate{mean, std::sqrt(var / static_cast<double>(runs)), runs, seed};
}

/// Stochastic spread game: the worth of a seed set is the sampled mean
/// number of active agents at the cascade fixpoint under uniform random
/// thresholds. Deterministic given (coalition, seed) via per-coalition
/// derived streams, so concurrent callers agree on every worth.
inline Game linear_threshold_game(InfluenceModel model, std::uint64_t runs, std::uint64_t seed) {
    if (runs < 1) throw input_error("spread game: at least one threshold sample is required");
    auto data = std::make_shared<const InfluenceModel>(std::move(model));
    return Game(data->size(), [data, runs, seed](Coalition s) {
        double sum = 0.0, sumsq = 0.0;
        detail::sample_cascades(*data, s, runs, rng::derive_stream(seed, s.mask()), sum, sumsq);
        return sum / static_cast<double>(runs);
    });
}

}  // namespace cgt

#endif  // CGT_DIFFUSION_HPP
