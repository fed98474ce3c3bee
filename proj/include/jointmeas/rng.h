// Copyright 2026 The jointmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JOINTMEAS_RNG_H
#define JOINTMEAS_RNG_H

#include <array>
#include <cstdint>
#include <string_view>

namespace jointmeas {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Pure: the same counter and key always give the same block.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based generator over Philox4x32-10.
///
/// The key is the 64-bit seed. Draw number n of stream s encrypts the counter
/// (n_lo, n_hi, s_lo, s_hi), so every (seed, stream, n) triple maps to one fixed
/// block regardless of how streams are scheduled. Each draw consumes one block
/// and uses its first two words.
class CounterRng {
   public:
    static constexpr std::string_view kAlgorithm = "philox4x32-10";

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Independent stream under the same seed.
    CounterRng split(std::uint64_t stream) const { return CounterRng(seed_, stream); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t draws() const { return draws_; }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t draws_ = 0;
};

/// Stream ids used by batch drivers: the high 32 bits name the purpose, the low
/// 32 bits the trial index.
enum class StreamDomain : std::uint32_t {
    measurement = 0,
    input_state = 1,
};

constexpr std::uint64_t stream_id(StreamDomain domain, std::uint32_t index) {
    return (static_cast<std::uint64_t>(domain) << 32) | index;
}

}  // namespace jointmeas

#endif
