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

#ifndef NLGATE_RNG_HPP
#define NLGATE_RNG_HPP

#include <array>
#include <cstdint>

namespace nlgate {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Reproducible random stream addressed by (seed, stream, substream).
///
/// The key is the 64-bit seed; the counter is (draw, substream, stream lo,
/// stream hi). Each block yields two 64-bit values, so the n-th value depends
/// only on the address and n, never on the thread or platform.
class RngStream {
   public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    /// 53-bit uniform in [0, 1).
    double uniform() noexcept;
    bool bernoulli(double p) noexcept {
        return uniform() < p;
    }

    std::uint64_t seed() const noexcept {
        return seed_;
    }
    std::uint64_t stream() const noexcept {
        return stream_;
    }
    /// Number of 64-bit values drawn so far.
    std::uint64_t counter() const noexcept {
        return drawn_;
    }

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint32_t substream_;
    std::uint64_t drawn_ = 0;
    std::array<std::uint32_t, 4> block_{};
};

}  // namespace nlgate

#endif
