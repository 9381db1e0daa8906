// Copyright 2026 The lzqt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rng.hpp: per-trajectory random streams.
//
// Each trajectory draws from its own std::mt19937_64 seeded by a splitmix64
// mix of (master_seed, trajectory_id), so results do not depend on which
// worker runs which trajectory.

#pragma once

#include <cstdint>
#include <random>

namespace lzqt {

/// splitmix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t trajectory_id) noexcept {
    // Injective in trajectory_id for a fixed master seed.
    return mix64(mix64(master_seed) ^ ((trajectory_id + 1ULL) * 0x9E3779B97F4A7C15ULL));
}

/// Uniform doubles on the open interval (0, 1), 53 bits of resolution.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double operator()() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace lzqt
