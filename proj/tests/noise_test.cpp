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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nlgate/error.hpp"

using namespace nlgate;

namespace {

NodeInput random_input(std::mt19937_64 &gen) {
    std::uniform_real_distribution<double> u(0, 1);
    const double w = u(gen);
    return {std::sqrt(w), std::polar(std::sqrt(1 - w), 6.283185307179586 * u(gen))};
}

}  // namespace

TEST(delta, values) {
    EXPECT_EQ(delta(0.0, 1.0), 0.0);
    EXPECT_NEAR(delta(100.0, 1.0), 800.0 / 160801.0, 1e-18);
    EXPECT_NEAR(delta(100.0, 1.0), 4.9751e-3, 1e-7);
    EXPECT_NEAR(delta(1.0, 1.0), 0.32, 1e-16);
    EXPECT_THROW(delta(-1.0, 1.0), Error);
}

TEST(delta, monotone_in_pz) {
    for (double g : {0.1, 1.0, 100.0}) {
        EXPECT_EQ(delta(g, 0.0), 8 * g);
        double prev = delta(g, 0.0);
        for (double pz = 0.25; pz <= 4; pz += 0.25) {
            const double d = delta(g, pz);
            EXPECT_LT(d, prev);
            prev = d;
        }
    }
}

TEST(delta, maximum_over_g_at_quarter) {
    const double h = 1e-5;
    EXPECT_NEAR(delta(0.25, 1.0), 0.5, 1e-16);
    const double slope = (delta(0.25 + h, 1.0) - delta(0.25 - h, 1.0)) / (2 * h);
    EXPECT_NEAR(slope, 0, 1e-8);
    EXPECT_LT(delta(0.25 + 1e-3, 1.0), 0.5);
    EXPECT_LT(delta(0.25 - 1e-3, 1.0), 0.5);
}

TEST(analytic_fidelity, basis_inputs_are_perfect) {
    for (int x : {0, 1}) {
        for (int y : {0, 1}) {
            const auto f = analytic_fidelity(NodeInput::basis(x), NodeInput::basis(y), 1, 1);
            EXPECT_EQ(f.value, 1.0);
            EXPECT_FALSE(f.clamped);
        }
    }
}

TEST(analytic_fidelity, balanced_values) {
    const auto bal = NodeInput::balanced();
    const auto f100 = analytic_fidelity(bal, bal, 100, 100);
    EXPECT_NEAR(f100.value, 1 - 800.0 / 160801.0, 1e-15);
    EXPECT_NEAR(f100.value, 0.995025, 1e-6);
    EXPECT_GE(f100.value, 0.99);
    EXPECT_NEAR(analytic_fidelity(bal, bal, 1, 1).value, 0.68, 1e-15);
}

TEST(analytic_fidelity, clamping_is_reported) {
    const auto bal = NodeInput::balanced();
    const auto f = analytic_fidelity(bal, bal, 0.25, 0.25, 0, 0);
    EXPECT_EQ(f.value, 0.0);
    EXPECT_TRUE(f.clamped);
}

TEST(analytic_fidelity, symmetric_under_node_swap) {
    std::mt19937_64 gen(21);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_input(gen), b = random_input(gen);
        const double ga = 1 + gen() % 500, gb = 1 + gen() % 500;
        const double pa = 0.5 + (gen() % 3), pb = 0.5 + (gen() % 3);
        EXPECT_EQ(analytic_fidelity(a, b, ga, gb, pa, pb).value, analytic_fidelity(b, a, gb, ga, pb, pa).value);
    }
}

TEST(node_input, normalization) {
    EXPECT_THROW(NodeInput(1, 1), Error);
    EXPECT_NO_THROW(NodeInput(0.6, Complex(0, 0.8)));
    EXPECT_NEAR(NodeInput::balanced().coherence_weight(), 0.25, 1e-15);
    EXPECT_THROW(NodeInput::basis(2), Error);
}

TEST(shrinking_factor, values) {
    EXPECT_EQ(shrinking_factor(0, 0.3, 1), 1.0);
    EXPECT_EQ(shrinking_factor(0, 0.3, 7), 1.0);
    EXPECT_NEAR(shrinking_factor(0.1, 0.01, 1), 0.998, 1e-15);
    EXPECT_NEAR(shrinking_factor(0.1, 0.01, 5), 0.99, 1e-15);
    EXPECT_NEAR(compound_shrinking_factor(0.1, 0.01, 5), std::pow(0.998, 5), 1e-15);
    EXPECT_THROW(shrinking_factor(0.1, 0.01, 0), Error);
    EXPECT_THROW(shrinking_factor(1.1, 0.01, 1), Error);
}

TEST(mismatch_factor, values) {
    EXPECT_EQ(mismatch_factor(0, 100, 1, 1), 1.0);
    const double m1 = mismatch_factor(0.05, 100, 1, 1);
    EXPECT_NEAR(m1, 0.9016, 5e-4);
    EXPECT_NEAR(m1, 0.9015936537500183, 1e-14);
    EXPECT_EQ(mismatch_factor(0.05, 100, 1, 2), m1 * m1);
    EXPECT_DOUBLE_EQ(mismatch_factor(0.05, 100, 1, 3), m1 * m1 * m1);
    EXPECT_EQ(mismatch_factor(0.05, 100, 1, 100, 1, 1), m1);
}

TEST(mismatch_factor, degenerate_denominator) {
    try {
        mismatch_factor(0, 0.25, 1, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateDenominator);
    }
    EXPECT_EQ(mismatch_factor(0.1, 0.25, 1, 1), 0.0);
}

TEST(success_probability, values) {
    EXPECT_EQ(success_probability(0, 0, 1), 1.0);
    EXPECT_NEAR(success_probability(0.1, 0.01, 1), 0.792, 1e-15);
    EXPECT_NEAR(success_probability(0.1, 0.01, 2), 0.627264, 1e-15);
    try {
        success_probability(0.5, 0.3, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidRegime);
    }
}

TEST(total_fidelity_factor, values) {
    EXPECT_EQ(total_fidelity_factor({0, 0, 0}, 100, 1, 1), 1.0);
    const NoiseParams noise{0.1, 0.01, 0.05};
    EXPECT_NEAR(total_fidelity_factor(noise, 100, 1, 1), 0.8998, 1e-4);
    EXPECT_NEAR(total_fidelity_factor(noise, 100, 1, 1), 0.998 * 0.9015936537500183, 1e-14);
    EXPECT_NEAR(total_fidelity_factor(noise, 100, 1, 3), 0.994 * std::pow(0.9015936537500183, 3), 1e-14);
    EXPECT_THROW(total_fidelity_factor({0.1, 0.01, 1.5}, 100, 1, 1), Error);
}

TEST(detection_events, clean_photon_clicks_once) {
    RngStream rng(1, 0);
    for (auto pol : {Polarization::V, Polarization::H}) {
        const auto d = detection_events(rng, 0, 0, pol);
        EXPECT_EQ(d.verdict, SideVerdict::Accept);
        EXPECT_EQ(d.reading, pol);
        EXPECT_EQ(d.clicks.count(), 1);
        EXPECT_FALSE(d.false_positive);
    }
    EXPECT_EQ(rng.counter(), 6u);
}

TEST(detection_events, lost_photon_without_dark_counts) {
    RngStream rng(1, 0);
    const auto gone = detection_events(rng, 0, 0, std::nullopt);
    EXPECT_EQ(gone.verdict, SideVerdict::Discard);
    EXPECT_EQ(gone.clicks.count(), 0);
    const auto lost = detection_events(rng, 1, 0, Polarization::H);
    EXPECT_EQ(lost.verdict, SideVerdict::Discard);
    EXPECT_FALSE(lost.photon_arrived);
}

TEST(detection_events, double_click_discards) {
    RngStream rng(1, 0);
    const auto d = detection_events(rng, 0, 1, Polarization::V);
    EXPECT_EQ(d.clicks.count(), 2);
    EXPECT_EQ(d.verdict, SideVerdict::Discard);
}

TEST(detection_events, false_positive_rate) {
    const double p_l = 0.1, p_dc = 0.01;
    const int n = 1000000;
    RngStream rng(2024, 0);
    int fp = 0, accepted = 0;
    for (int i = 0; i < n; ++i) {
        const auto d = detection_events(rng, p_l, p_dc, Polarization::H);
        fp += d.false_positive;
        accepted += d.verdict == SideVerdict::Accept;
    }
    const auto exact = exact_side_statistics(p_l, p_dc);
    EXPECT_NEAR(exact.false_positive, p_l * 2 * p_dc * (1 - p_dc), 1e-18);
    const double sigma_fp = std::sqrt(exact.false_positive * (1 - exact.false_positive) / n);
    EXPECT_NEAR(fp / double(n), exact.false_positive, 3 * sigma_fp);
    // First-order form differs from the exact one by p_l 2 p_dc^2.
    EXPECT_NEAR(fp / double(n), 2 * p_l * p_dc, 3 * sigma_fp + 2 * p_l * p_dc * p_dc);
    const double sigma_acc = std::sqrt(exact.accept * (1 - exact.accept) / n);
    EXPECT_NEAR(accepted / double(n), exact.accept, 3 * sigma_acc);
}

TEST(exact_side_statistics, consistency) {
    for (double p_l : {0.0, 0.05, 0.1, 0.7}) {
        for (double p_dc : {0.0, 0.005, 0.01, 0.4}) {
            const auto s = exact_side_statistics(p_l, p_dc);
            EXPECT_NEAR(s.accept + s.discard, 1, 1e-15);
            EXPECT_NEAR(s.accept, s.true_accept + s.false_positive, 1e-15);
        }
    }
    EXPECT_NEAR(exact_success_probability(0.1, 0.01, 1), 0.7974132804, 1e-10);
    EXPECT_EQ(exact_success_probability(0, 0, 3), 1.0);
    // Both forms reduce to (1-p_l)^2 as p_dc -> 0.
    const double p_l = 0.1, p_dc = 1e-6;
    EXPECT_NEAR(exact_success_probability(p_l, p_dc, 1), success_probability(p_l, p_dc, 1), 1e-6);
}
