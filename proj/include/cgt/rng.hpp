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

#ifndef CGT_RNG_HPP
#define CGT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace cgt::rng {

/// SplitMix64 finalizer. Used to derive independent, reproducible
/// streams from a (seed, index) pair without coordination.
inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index + 1) * 0x9E3779B97F4A7C15ull);
}

/// The engine algorithm is pinned by the standard, so streams are
/// bit-reproducible across platforms.
inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Unbiased draw from [0, bound) by rejection; avoids the
/// implementation-defined std distributions.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = eng();
        if (r >= threshold) return r % bound;
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_interval(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]. Thresholds drawn from this half-open side
/// keep zero-influence nodes forever inactive.
inline double unit_interval_positive(std::mt19937_64& eng) {
    return 1.0 - unit_interval(eng);
}

inline double uniform_range(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * unit_interval(eng);
}

/// Fisher-Yates shuffle on top of the unbiased bounded draw.
template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& eng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace cgt::rng

#endif  // CGT_RNG_HPP
