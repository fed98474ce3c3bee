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

#include "jointmeas/rng.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>

namespace jointmeas {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZero) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, SameSeedAndStreamReplay) {
    CounterRng a(42, 7);
    CounterRng b(42, 7);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(a.next_u64(), b.next_u64());
    }
    EXPECT_EQ(a.draws(), 100u);
}

TEST(CounterRng, DrawIsPureFunctionOfCounter) {
    CounterRng rng(9, 3);
    rng.next_u64();
    std::uint64_t second = rng.next_u64();
    Block block = philox4x32_10({1, 0, 3, 0}, {9, 0});
    EXPECT_EQ(second, (static_cast<std::uint64_t>(block[1]) << 32) | block[0]);
}

TEST(CounterRng, StreamsAndSeedsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t stream = 0; stream < 64; stream++) {
        firsts.insert(CounterRng(1, stream).next_u64());
        firsts.insert(CounterRng(2, stream).next_u64());
    }
    EXPECT_EQ(firsts.size(), 128u);
}

TEST(CounterRng, SplitStartsFresh) {
    CounterRng parent(5, 0);
    parent.next_u64();
    CounterRng child = parent.split(stream_id(StreamDomain::input_state, 4));
    EXPECT_EQ(child.draws(), 0u);
    EXPECT_EQ(child.seed(), 5u);
    EXPECT_EQ(child.next_u64(), CounterRng(5, (std::uint64_t{1} << 32) | 4).next_u64());
}

TEST(CounterRng, UniformInHalfOpenUnitInterval) {
    CounterRng rng(123);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; i++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Mean of U(0,1) has standard error 1/sqrt(12 n); allow 5 sigma.
    EXPECT_NEAR(sum / n, 0.5, 5.0 / std::sqrt(12.0 * n));
}

TEST(StreamId, DomainsDoNotCollide) {
    EXPECT_EQ(stream_id(StreamDomain::measurement, 17), 17u);
    EXPECT_NE(stream_id(StreamDomain::input_state, 17), stream_id(StreamDomain::measurement, 17));
}

}  // namespace
}  // namespace jointmeas
