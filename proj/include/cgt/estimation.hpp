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

#ifndef CGT_ESTIMATION_HPP
#define CGT_ESTIMATION_HPP

#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <thread>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"
#include "cgt/rng.hpp"

namespace cgt {

/// Result of a permutation-sampling run. std_err is the unbiased sample
/// standard deviation over sqrt(samples).
struct Estimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// (seed, iterations, batch) fully determines the output, bit for bit,
/// regardless of thread scheduling. Changing the batch size may shift
/// the stream assignment; invariance across batch sizes is not promised.
struct SamplerConfig {
    std::uint64_t iterations = 100000;
    std::uint64_t seed = 0;
    std::uint64_t batch = 4096;  ///< draws per worker stream
};

namespace detail {

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }
    void absorb(const Accumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        count += o.count;
    }
    Estimate finalize(std::uint64_t seed) const {
        const double mean = sum / static_cast<double>(count);
        // clamp: exact-zero variance can round to a tiny negative
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(count)) /
                              static_cast<double>(count - 1));
        return Estimate{mean, std::sqrt(var / static_cast<double>(count)), count, seed};
    }
};

inline void check_sampler(const SamplerConfig& cfg) {
    if (cfg.iterations < 2) throw input_error("sampler: at least two iterations are required");
    if (cfg.batch < 1) throw input_error("sampler: batch size must be positive");
}

/// Runs one body per batch, batches spread over hardware threads,
/// results reduced in fixed batch order.
template <typename PerBatch>
void run_batches(const SamplerConfig& cfg, PerBatch&& body) {
    const std::uint64_t batches = (cfg.iterations + cfg.batch - 1) / cfg.batch;
    const unsigned workers = std::max(
        1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                               static_cast<unsigned>(std::min<std::uint64_t>(batches, 64))));
    auto batch_size = [&](std::uint64_t b) {
        return std::min(cfg.batch, cfg.iterations - b * cfg.batch);
    };
    if (workers == 1) {
        for (std::uint64_t b = 0; b < batches; ++b) body(b, batch_size(b));
        return;
    }
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::uint64_t b = w; b < batches; b += workers) body(b, batch_size(b));
        }));
    }
    for (auto& t : tasks) t.get();
}

}  // namespace detail

/// Permutation-sampling estimate of every player's Shapley value. Each
/// draw walks one uniform arrival order and credits every player with
/// its marginal contribution to the preceding prefix: n worth calls per
/// permutation. The per-player means are unbiased.
inline std::vector<Estimate> mc_shapley(const Game& g, const SamplerConfig& cfg) {
    detail::check_sampler(cfg);
    const int n = g.player_count();
    const std::uint64_t batches = (cfg.iterations + cfg.batch - 1) / cfg.batch;
    std::vector<std::vector<detail::Accumulator>> per_batch(
        batches, std::vector<detail::Accumulator>(static_cast<std::size_t>(n)));

    detail::run_batches(cfg, [&](std::uint64_t b, std::uint64_t draws) {
        auto eng = rng::make_engine(rng::derive_stream(cfg.seed, b));
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        auto& acc = per_batch[b];
        for (std::uint64_t it = 0; it < draws; ++it) {
            rng::shuffle(order, eng);
            Coalition prefix = Coalition::empty();
            double prev = 0.0;
            for (int p : order) {
                prefix = prefix.with(p);
                const double cur = g.worth(prefix);
                acc[static_cast<std::size_t>(p)].add(cur - prev);
                prev = cur;
            }
        }
    });

    std::vector<Estimate> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        detail::Accumulator total;
        for (std::uint64_t b = 0; b < batches; ++b)
            total.absorb(per_batch[b][static_cast<std::size_t>(i)]);
        out.push_back(total.finalize(cfg.seed));
    }
    return out;
}

/// Permutation-sampling estimate of a group's value: the same walk on
/// the quotient game that merges the group, tracking only the proxy's
/// marginal contribution (two worth calls per draw). Unbiased for the
/// exact group value.
inline Estimate mc_group_value(const Game& g, Coalition c, const SamplerConfig& cfg) {
    detail::check_sampler(cfg);
    if (c.is_empty()) throw input_error("group estimate: the group must be nonempty");
    if (!c.subset_of(g.universe()))
        throw input_error("group estimate: group outside the player universe");

    const MergedGame q = merge(g, c);
    const int m = q.game.player_count();
    const int proxy = q.proxy;
    const std::uint64_t batches = (cfg.iterations + cfg.batch - 1) / cfg.batch;
    std::vector<detail::Accumulator> per_batch(batches);

    detail::run_batches(cfg, [&](std::uint64_t b, std::uint64_t draws) {
        auto eng = rng::make_engine(rng::derive_stream(cfg.seed, b));
        std::vector<int> order(static_cast<std::size_t>(m));
        std::iota(order.begin(), order.end(), 0);
        auto& acc = per_batch[b];
        for (std::uint64_t it = 0; it < draws; ++it) {
            rng::shuffle(order, eng);
            Coalition prefix = Coalition::empty();
            for (int p : order) {
                if (p == proxy) break;
                prefix = prefix.with(p);
            }
            acc.add(q.game.worth(prefix.with(proxy)) - q.game.worth(prefix));
        }
    });

    detail::Accumulator total;
    for (const auto& acc : per_batch) total.absorb(acc);
    return total.finalize(cfg.seed);
}

/// Sanity report for the 1/sqrt(samples) error decay: the same run at m
/// and 4m iterations should roughly halve the standard error.
struct ScalingReport {
    Estimate base;
    Estimate quadrupled;
    double ratio = 1.0;  ///< quadrupled.std_err / base.std_err; 1 when both are zero
};

inline ScalingReport stderr_scaling_check(const Game& g, Coalition c, const SamplerConfig& cfg) {
    SamplerConfig big = cfg;
    big.iterations = cfg.iterations * 4;
    ScalingReport report{mc_group_value(g, c, cfg), mc_group_value(g, c, big), 1.0};
    if (report.base.std_err == 0.0 && report.quadrupled.std_err == 0.0)
        report.ratio = 1.0;
    else
        report.ratio = report.quadrupled.std_err / report.base.std_err;
    return report;
}

}  // namespace cgt

#endif  // CGT_ESTIMATION_HPP
