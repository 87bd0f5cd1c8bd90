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

#ifndef CGT_NETWORK_GAMES_HPP
#define CGT_NETWORK_GAMES_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cgt/coalition.hpp"
#include "cgt/errors.hpp"
#include "cgt/game.hpp"

namespace cgt {

/// Undirected weighted graph over players 0..n-1, with optional
/// nonnegative node weights. No self-loops, positive finite edge
/// weights, at most one edge per pair.
class Network {
public:
    explicit Network(int n) : n_(n), adj_(static_cast<std::size_t>(n)),
                              node_weight_(static_cast<std::size_t>(n), 0.0) {
        if (n < 1 || n > kMaxPlayers)
            throw input_error("network: node count must be in 1.." + std::to_string(kMaxPlayers));
    }

    void add_edge(int u, int v, double weight = 1.0) {
        check_node(u);
        check_node(v);
        if (u == v) throw input_error("network: self-loops are not allowed");
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw input_error("network: edge weights must be positive and finite");
        for (const auto& [w, f] : adj_[static_cast<std::size_t>(u)]) {
            (void)f;
            if (w == v) throw input_error("network: duplicate edge");
        }
        adj_[static_cast<std::size_t>(u)].emplace_back(v, weight);
        adj_[static_cast<std::size_t>(v)].emplace_back(u, weight);
        edges_.emplace_back(u, v, weight);
    }

    void set_node_weight(int i, double w) {
        check_node(i);
        if (w < 0.0 || !std::isfinite(w))
            throw input_error("network: node weights must be nonnegative and finite");
        node_weight_[static_cast<std::size_t>(i)] = w;
        has_node_weights_ = true;
    }

    int size() const { return n_; }
    bool has_node_weights() const { return has_node_weights_; }
    double node_weight(int i) const { return node_weight_[static_cast<std::size_t>(i)]; }
    const std::vector<std::tuple<int, int, double>>& edges() const { return edges_; }
    const std::vector<std::pair<int, double>>& neighbors(int i) const {
        return adj_[static_cast<std::size_t>(i)];
    }

private:
    void check_node(int i) const {
        if (i < 0 || i >= n_) throw input_error("network: node index out of range");
    }

    int n_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<std::tuple<int, int, double>> edges_;
    std::vector<double> node_weight_;
    bool has_node_weights_ = false;
};

/// Whether the subgraph induced by s is connected; singletons count as
/// connected, the empty set does not. Breadth-first search per query.
inline bool is_connected(const Network& net, Coalition s) {
    const int k = s.size();
    if (k == 0) return false;
    if (k == 1) return true;
    int stack[kMaxPlayers];
    int top = 0;
    const int start = s.lowest();
    std::uint64_t seen = std::uint64_t{1} << start;
    stack[top++] = start;
    int visited = 1;
    while (top > 0) {
        const int u = stack[--top];
        for (const auto& [v, f] : net.neighbors(u)) {
            (void)f;
            if (!s.contains(v) || ((seen >> v) & 1u)) continue;
            seen |= std::uint64_t{1} << v;
            stack[top++] = v;
            ++visited;
        }
    }
    return visited == k;
}

/// Worth 1 for connected coalitions of at least two nodes, 0 otherwise.
inline Game connectivity_game(Network net) {
    auto data = std::make_shared<const Network>(std::move(net));
    return Game(data->size(), [data](Coalition s) {
        return (s.size() > 1 && is_connected(*data, s)) ? 1.0 : 0.0;
    });
}

/// Connected coalitions are worth the number of internal relationships
/// divided by the total weight carried on them; everything else is 0.
inline Game wconn_game(Network net) {
    auto data = std::make_shared<const Network>(std::move(net));
    return Game(data->size(), [data](Coalition s) {
        if (s.size() <= 1 || !is_connected(*data, s)) return 0.0;
        int count = 0;
        double weight_sum = 0.0;
        for (const auto& [u, v, f] : data->edges()) {
            if (s.contains(u) && s.contains(v)) {
                ++count;
                weight_sum += f;
            }
        }
        if (!(weight_sum > 0.0))
            throw input_error("relationship-weighted game: connected coalition with no weight");
        return static_cast<double>(count) / weight_sum;
    });
}

/// Connected coalitions are worth the sum of their node weights;
/// everything else is 0. Requires node weights on the network.
inline Game wconn2_game(Network net) {
    if (!net.has_node_weights())
        throw input_error("node-weighted game: the network carries no node weights");
    auto data = std::make_shared<const Network>(std::move(net));
    return Game(data->size(), [data](Coalition s) {
        if (s.size() <= 1 || !is_connected(*data, s)) return 0.0;
        double acc = 0.0;
        for (int i : s.members()) acc += data->node_weight(i);
        return acc;
    });
}

}  // namespace cgt

#endif  // CGT_NETWORK_GAMES_HPP
