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

#include "nlgate/node_input.hpp"

#include <cmath>
#include <string>

#include "nlgate/error.hpp"

namespace nlgate {

NodeInput::NodeInput(std::complex<double> zero, std::complex<double> one) : zero_(zero), one_(one) {
    const double norm = std::norm(zero) + std::norm(one);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        throw Error(ErrorCode::NotNormalized, "node amplitudes have squared norm " + std::to_string(norm));
    }
}

NodeInput NodeInput::basis(int bit) {
    if (bit != 0 && bit != 1) {
        throw Error(ErrorCode::InvalidParams, "basis bit must be 0 or 1");
    }
    return bit == 0 ? NodeInput(1.0, 0.0) : NodeInput(0.0, 1.0);
}

NodeInput NodeInput::balanced() {
    const double s = std::sqrt(0.5);
    return {s, s};
}

double NodeInput::coherence_weight() const noexcept {
    return std::norm(zero_ * one_);
}

}  // namespace nlgate
