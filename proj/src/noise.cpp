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

#include "nlgate/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlgate/error.hpp"

namespace nlgate {

namespace {

void require_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw Error(ErrorCode::InvalidParams, std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

void require_gates(int gates) {
    if (gates < 1) {
        throw Error(ErrorCode::InvalidParams, "gate count N must be at least 1");
    }
}

}  // namespace

void NoiseParams::validate() const {
    require_probability(photon_loss, "p_l");
    require_probability(dark_count, "p_dc");
    require_probability(mismatch, "f");
}

ClampedValue analytic_fidelity(const NodeInput &node_a, const NodeInput &node_b, double coupling_a,
                               double coupling_b, double pz_a, double pz_b) {
    const double raw = 1 - 2 * (node_b.coherence_weight() * delta(coupling_b, pz_b) +
                                node_a.coherence_weight() * delta(coupling_a, pz_a));
    const double value = std::clamp(raw, 0.0, 1.0);
    return {value, value != raw};
}

double shrinking_factor(double p_l, double p_dc, int gates) {
    require_probability(p_l, "p_l");
    require_probability(p_dc, "p_dc");
    require_gates(gates);
    return 1 - 2.0 * gates * p_l * p_dc;
}

double compound_shrinking_factor(double p_l, double p_dc, int gates) {
    require_probability(p_l, "p_l");
    require_probability(p_dc, "p_dc");
    require_gates(gates);
    return std::pow(1 - 2 * p_l * p_dc, gates);
}

double mismatch_side_factor(double f, double coupling_ratio, double pz) {
    require_probability(f, "f");
    const double r = resonant_reflectance(coupling_ratio, pz);
    const double denominator = f + (1 - f) * r;
    if (denominator == 0) {
        throw Error(ErrorCode::DegenerateDenominator, "f + (1-f)R vanishes (f = 0 and R = 0)");
    }
    return (1 - f) * r / denominator;
}

double mismatch_factor(double f, double coupling_ratio, double pz, int gates) {
    require_gates(gates);
    const double side = mismatch_side_factor(f, coupling_ratio, pz);
    return std::pow(side * side, gates);
}

double mismatch_factor(double f, double coupling_a, double pz_a, double coupling_b, double pz_b, int gates) {
    require_gates(gates);
    return std::pow(mismatch_side_factor(f, coupling_a, pz_a) * mismatch_side_factor(f, coupling_b, pz_b), gates);
}

double success_probability(double p_l, double p_dc, int gates) {
    require_probability(p_l, "p_l");
    require_probability(p_dc, "p_dc");
    require_gates(gates);
    const double second = 1 - p_l - 2 * p_dc;
    if (second < 0) {
        throw Error(ErrorCode::InvalidRegime, "1 - p_l - 2 p_dc is negative");
    }
    return std::pow(1 - p_l, gates) * std::pow(second, gates);
}

double total_fidelity_factor(const NoiseParams &noise, double coupling_ratio, double pz, int gates) {
    noise.validate();
    return shrinking_factor(noise.photon_loss, noise.dark_count, gates) *
           mismatch_factor(noise.mismatch, coupling_ratio, pz, gates);
}

double total_fidelity_factor(const NoiseParams &noise, double coupling_a, double pz_a, double coupling_b,
                             double pz_b, int gates) {
    noise.validate();
    return shrinking_factor(noise.photon_loss, noise.dark_count, gates) *
           mismatch_factor(noise.mismatch, coupling_a, pz_a, coupling_b, pz_b, gates);
}

SideDetection detection_events(RngStream &rng, double p_l, double p_dc, std::optional<Polarization> photon) {
    const bool lost = rng.bernoulli(p_l);
    const bool dark_v = rng.bernoulli(p_dc);
    const bool dark_h = rng.bernoulli(p_dc);

    SideDetection out;
    out.photon_arrived = photon.has_value() && !lost;
    out.clicks.v = dark_v || (out.photon_arrived && *photon == Polarization::V);
    out.clicks.h = dark_h || (out.photon_arrived && *photon == Polarization::H);
    if (out.clicks.count() == 1) {
        out.verdict = SideVerdict::Accept;
        out.reading = out.clicks.v ? Polarization::V : Polarization::H;
        out.false_positive = !out.photon_arrived;
    }
    return out;
}

SideStatistics exact_side_statistics(double p_l, double p_dc) {
    require_probability(p_l, "p_l");
    require_probability(p_dc, "p_dc");
    // Arrived: accepted iff the other detector stays dark. Absent: exactly
    // one of the two detectors fires.
    const double true_accept = (1 - p_l) * (1 - p_dc);
    const double false_positive = p_l * 2 * p_dc * (1 - p_dc);
    const double accept = true_accept + false_positive;
    return {accept, true_accept, false_positive, 1 - accept};
}

double exact_success_probability(double p_l, double p_dc, int gates) {
    require_gates(gates);
    return std::pow(exact_side_statistics(p_l, p_dc).accept, 2 * gates);
}

}  // namespace nlgate
