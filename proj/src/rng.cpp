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

namespace nlgate {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, ctr[0], hi0, lo0);
        mulhilo(kM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream) noexcept
    : seed_(seed), stream_(stream), substream_(substream) {
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t n = drawn_++;
    if (n % 2 == 0) {
        const std::uint64_t block = n / 2;
        block_ = philox4x32({static_cast<std::uint32_t>(block), substream_, static_cast<std::uint32_t>(stream_),
                             static_cast<std::uint32_t>(stream_ >> 32)},
                            {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    }
    const std::size_t w = (n % 2) * 2;
    return static_cast<std::uint64_t>(block_[w]) | (static_cast<std::uint64_t>(block_[w + 1]) << 32);
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace nlgate
