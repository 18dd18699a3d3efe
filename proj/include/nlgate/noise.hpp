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

#ifndef NLGATE_NOISE_HPP
#define NLGATE_NOISE_HPP

#include <optional>

#include "nlgate/cavity.hpp"
#include "nlgate/node_input.hpp"
#include "nlgate/rng.hpp"

namespace nlgate {

struct NoiseParams {
    double photon_loss = 0;  // p_l
    double dark_count = 0;   // p_dc, per detector per attempt
    double mismatch = 0;     // f

    /// Throws InvalidParams unless every probability lies in [0, 1].
    void validate() const;
};

/// 8 G / (1 + 4 G P_z)^2
template <class Real = double>
Real delta(const Real &coupling_ratio, const Real &pz) {
    detail::require_nonnegative(coupling_ratio, pz);
    const Real d = Real(1) + Real(4) * coupling_ratio * pz;
    return Real(8) * coupling_ratio / (d * d);
}

struct ClampedValue {
    double value;
    /// True when the raw value fell outside [0, 1] and was clamped.
    bool clamped;
};

/// F = 1 - 2(|ab|^2 Delta_B + |alpha beta|^2 Delta_A), clamped to [0, 1].
ClampedValue analytic_fidelity(const NodeInput &node_a, const NodeInput &node_b, double coupling_a,
                               double coupling_b, double pz_a = 1, double pz_b = 1);

/// 1 - 2 N p_l p_dc. May go negative; callers decide whether to clamp.
double shrinking_factor(double p_l, double p_dc, int gates);
/// (1 - 2 p_l p_dc)^N, the multiplicative alternative.
double compound_shrinking_factor(double p_l, double p_dc, int gates);

/// (1-f) R / (f + (1-f) R) for one node. Throws DegenerateDenominator when
/// f = 0 and R = 0.
double mismatch_side_factor(double f, double coupling_ratio, double pz);
/// mismatch_side_factor^(2N): both nodes share G and P_z.
double mismatch_factor(double f, double coupling_ratio, double pz, int gates);
/// Per-node form: side_A^N * side_B^N.
double mismatch_factor(double f, double coupling_a, double pz_a, double coupling_b, double pz_b, int gates);

/// (1-p_l)^N (1-p_l-2p_dc)^N; throws InvalidRegime when 1-p_l-2p_dc < 0.
double success_probability(double p_l, double p_dc, int gates);

/// shrinking_factor * mismatch_factor.
double total_fidelity_factor(const NoiseParams &noise, double coupling_ratio, double pz, int gates);
double total_fidelity_factor(const NoiseParams &noise, double coupling_a, double pz_a, double coupling_b,
                             double pz_b, int gates);

enum class Polarization : int { V = 0, H = 1 };

struct ClickPattern {
    bool v = false;
    bool h = false;

    int count() const noexcept {
        return int(v) + int(h);
    }
};

enum class SideVerdict { Accept, Discard };

struct SideDetection {
    ClickPattern clicks;
    /// Whether the photon reached the detectors.
    bool photon_arrived = false;
    SideVerdict verdict = SideVerdict::Discard;
    /// Detector that clicked, when accepted.
    std::optional<Polarization> reading;
    /// Accepted on a dark click with no photon present.
    bool false_positive = false;
};

/// One side's detector pair. `photon` is the polarization the photon would
/// register if it arrives, or nullopt if it is already gone. Always draws
/// three uniforms, in order: exogenous loss, dark click on D_v, dark click on
/// D_h.
SideDetection detection_events(RngStream &rng, double p_l, double p_dc, std::optional<Polarization> photon);

/// Exact per-side probabilities for a photon that enters detection with
/// exogenous loss p_l.
struct SideStatistics {
    double accept;
    double true_accept;
    double false_positive;
    double discard;
};

SideStatistics exact_side_statistics(double p_l, double p_dc);

/// Exact probability that every side of every gate is accepted:
/// accept^(2N). The first-order limit is success_probability.
double exact_success_probability(double p_l, double p_dc, int gates);

}  // namespace nlgate

#endif
