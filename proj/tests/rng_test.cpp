// Copyright 2026 The nlgate Authors
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

#include "nlgate/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

using namespace nlgate;

TEST(philox, known_answers) {
    using Block = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(rng_stream, frozen_sequence) {
    RngStream rng(0x123456789abcdef0ull, 5);
    EXPECT_EQ(rng.next_u64(), 0x70bbc61faead3422ull);
    EXPECT_EQ(rng.next_u64(), 0x27d55addc86a83d9ull);
    EXPECT_EQ(rng.next_u64(), 0xfa2f013f72f03c2cull);
    EXPECT_EQ(rng.next_u64(), 0xd621928691ebb87full);
    EXPECT_EQ(rng.counter(), 4u);

    RngStream again(0x123456789abcdef0ull, 5);
    EXPECT_EQ(again.uniform(), 0.44036520265097034);
    EXPECT_EQ(again.uniform(), 0.15559928812619184);
}

TEST(rng_stream, addresses_are_distinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t seed : {1ull, 2ull}) {
        for (std::uint64_t stream : {0ull, 1ull, 1ull << 40}) {
            for (std::uint32_t sub : {0u, 7u}) {
                RngStream rng(seed, stream, sub);
                seen.insert(rng.next_u64());
            }
        }
    }
    EXPECT_EQ(seen.size(), 12u);
}

TEST(rng_stream, uniform_moments) {
    RngStream rng(99, 0);
    const int n = 200000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n - mean * mean, 1.0 / 12, 2e-3);
}

TEST(rng_stream, bernoulli_rate) {
    RngStream rng(7, 3);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        hits += rng.bernoulli(0.2);
    }
    EXPECT_NEAR(hits / double(n), 0.2, 5 * std::sqrt(0.2 * 0.8 / n));
    EXPECT_FALSE(RngStream(1, 1).bernoulli(0.0));
    EXPECT_TRUE(RngStream(1, 1).bernoulli(1.0));
}
