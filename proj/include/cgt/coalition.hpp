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

#ifndef CGT_COALITION_HPP
#define CGT_COALITION_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cgt {

/// Hard cap on the player universe: one bit per player in a 64-bit mask.
inline constexpr int kMaxPlayers = 64;

/// A set of players over dense indices 0..n-1, encoded as a bitmask.
/// Player i occupies bit i. All set algebra is O(1) on the word.
class Coalition {
public:
    constexpr Coalition() = default;

    static constexpr Coalition from_mask(std::uint64_t m) { return Coalition(m); }
    static constexpr Coalition empty() { return Coalition(); }
    static constexpr Coalition single(int i) { return Coalition(std::uint64_t{1} << i); }
    static constexpr Coalition full(int n) {
        return Coalition(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr Coalition of(std::initializer_list<int> players) {
        std::uint64_t m = 0;
        for (int p : players) m |= std::uint64_t{1} << p;
        return Coalition(m);
    }

    constexpr std::uint64_t mask() const { return bits_; }
    constexpr bool is_empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr bool subset_of(Coalition o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(Coalition o) const { return (bits_ & o.bits_) != 0; }

    /// Index of the lowest member. Pre: nonempty.
    constexpr int lowest() const { return std::countr_zero(bits_); }

    constexpr Coalition with(int i) const { return Coalition(bits_ | (std::uint64_t{1} << i)); }
    constexpr Coalition without(int i) const { return Coalition(bits_ & ~(std::uint64_t{1} << i)); }

    friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.bits_ | b.bits_); }
    friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.bits_ & b.bits_); }
    friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(Coalition a, Coalition b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(Coalition a, Coalition b) { return a.bits_ != b.bits_; }
    friend constexpr bool operator<(Coalition a, Coalition b) { return a.bits_ < b.bits_; }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t rem = bits_; rem; rem &= rem - 1) out.push_back(std::countr_zero(rem));
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (std::uint64_t rem = bits_; rem; rem &= rem - 1) {
            if (!first) s += ",";
            s += std::to_string(std::countr_zero(rem));
            first = false;
        }
        return s + "}";
    }

private:
    constexpr explicit Coalition(std::uint64_t b) : bits_(b) {}
    std::uint64_t bits_ = 0;
};

/// Range over all subsets of a coalition in ascending mask order, the
/// empty set and the coalition itself included.
class SubsetRange {
public:
    explicit constexpr SubsetRange(Coalition super) : super_(super.mask()) {}

    class iterator {
    public:
        constexpr iterator(std::uint64_t sub, std::uint64_t super, bool done)
            : sub_(sub), super_(super), done_(done) {}
        constexpr Coalition operator*() const { return Coalition::from_mask(sub_); }
        constexpr iterator& operator++() {
            sub_ = (sub_ - super_) & super_;
            if (sub_ == 0) done_ = true;
            return *this;
        }
        constexpr bool operator!=(const iterator& o) const {
            return done_ != o.done_ || sub_ != o.sub_;
        }

    private:
        std::uint64_t sub_;
        std::uint64_t super_;
        bool done_;
    };

    constexpr iterator begin() const { return iterator(0, super_, false); }
    constexpr iterator end() const { return iterator(0, super_, true); }

private:
    std::uint64_t super_;
};

inline constexpr SubsetRange subsets_of(Coalition s) { return SubsetRange(s); }

/// Range over every coalition of an n-player universe, ascending mask order.
class CoalitionRange {
public:
    explicit constexpr CoalitionRange(int n) : count_(std::uint64_t{1} << n) {}

    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t m) : m_(m) {}
        constexpr Coalition operator*() const { return Coalition::from_mask(m_); }
        constexpr iterator& operator++() { ++m_; return *this; }
        constexpr bool operator!=(const iterator& o) const { return m_ != o.m_; }

    private:
        std::uint64_t m_;
    };

    constexpr iterator begin() const { return iterator(0); }
    constexpr iterator end() const { return iterator(count_); }

private:
    std::uint64_t count_;
};

inline constexpr CoalitionRange all_coalitions(int n) { return CoalitionRange(n); }

/// Range over all size-k subsets of an n-player universe in ascending mask
/// order (Gosper's hack).
class KSubsetRange {
public:
    constexpr KSubsetRange(int n, int k) : n_(n), k_(k) {}

    class iterator {
    public:
        constexpr iterator(std::uint64_t m, std::uint64_t limit, bool done)
            : m_(m), limit_(limit), done_(done) {}
        constexpr Coalition operator*() const { return Coalition::from_mask(m_); }
        constexpr iterator& operator++() {
            if (m_ == 0) {  // k == 0: the empty set is the only subset
                done_ = true;
                return *this;
            }
            const std::uint64_t c = m_ & (~m_ + 1);
            const std::uint64_t r = m_ + c;
            m_ = (((r ^ m_) >> 2) / c) | r;
            if (m_ > limit_) done_ = true;
            return *this;
        }
        constexpr bool operator!=(const iterator& o) const {
            return done_ != o.done_ || (!done_ && m_ != o.m_);
        }

    private:
        std::uint64_t m_;
        std::uint64_t limit_;
        bool done_;
    };

    constexpr iterator begin() const {
        const std::uint64_t limit = Coalition::full(n_).mask();
        if (k_ < 0 || k_ > n_) return iterator(0, limit, true);
        const std::uint64_t first = (k_ == 0) ? 0 : Coalition::full(k_).mask();
        return iterator(first, limit, false);
    }
    constexpr iterator end() const { return iterator(0, Coalition::full(n_).mask(), true); }

private:
    int n_;
    int k_;
};

inline constexpr KSubsetRange k_subsets(int n, int k) { return KSubsetRange(n, k); }

}  // namespace cgt

#endif  // CGT_COALITION_HPP
