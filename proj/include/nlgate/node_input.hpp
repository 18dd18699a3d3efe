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

#ifndef NLGATE_NODE_INPUT_HPP
#define NLGATE_NODE_INPUT_HPP

#include <complex>

namespace nlgate {

/// Qubit stored in one node's atom: zero|0> + one|1>.
class NodeInput {
   public:
    /// Throws NotNormalized unless |zero|^2 + |one|^2 = 1 within 1e-12.
    NodeInput(std::complex<double> zero, std::complex<double> one);

    static NodeInput basis(int bit);
    /// (|0> + |1>)/sqrt(2)
    static NodeInput balanced();

    std::complex<double> zero() const noexcept {
        return zero_;
    }
    std::complex<double> one() const noexcept {
        return one_;
    }
    /// |zero * one|^2, the weight of this node's coherence.
    double coherence_weight() const noexcept;

   private:
    std::complex<double> zero_;
    std::complex<double> one_;
};

}  // namespace nlgate

#endif
