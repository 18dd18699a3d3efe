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

#include "nlgate/cavity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nlgate {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kGaussianCutoff = 8.0;

}  // namespace

CavityParams::CavityParams(double g, double gamma, double gamma_s) : g_(g), gamma_(gamma), gamma_s_(gamma_s) {
    if (!(g >= 0) || !(gamma > 0) || !(gamma_s > 0) || !std::isfinite(g) || !std::isfinite(gamma) ||
        !std::isfinite(gamma_s)) {
        throw Error(ErrorCode::InvalidParams, "cavity parameters need g >= 0, gamma > 0, gamma_s > 0");
    }
}

Complex reflection_coefficient(double omega, double pz, const CavityParams &params, SpectralForm form) {
    if (pz < 0) {
        throw Error(ErrorCode::InvalidParams, "P_z must be non-negative");
    }
    const double g2 = params.g() * params.g();
    const double gs = params.gamma_s();
    Complex self_energy;
    if (form == SpectralForm::SingleExcitation) {
        self_energy = g2 * pz / (omega + kI * (gs / 2));
    } else {
        self_energy = kI * gs * g2 * pz / ((omega + kI * gs) * (omega + kI * (gs / 2)));
    }
    const Complex half_width = kI * (params.gamma() / 2);
    return (omega - half_width - self_energy) / (omega + half_width - self_energy);
}

PulseSpectrum::PulseSpectrum(SpectrumShape shape, double center, double bandwidth)
    : shape_(shape), center_(center), bandwidth_(bandwidth) {
    if (!(bandwidth > 0) || !std::isfinite(bandwidth) || !std::isfinite(center)) {
        throw Error(ErrorCode::InvalidParams, "pulse bandwidth must be positive and finite");
    }
}

double PulseSpectrum::power(double omega) const {
    const double x = omega - center_;
    if (shape_ == SpectrumShape::Gaussian) {
        return std::exp(-x * x / (2 * bandwidth_ * bandwidth_)) /
               (std::sqrt(2 * std::numbers::pi) * bandwidth_);
    }
    const double half = std::sqrt(3.0) * bandwidth_;
    return std::abs(x) <= half ? 1.0 / (2 * half) : 0.0;
}

double PulseSpectrum::lower() const noexcept {
    return center_ - (shape_ == SpectrumShape::Gaussian ? kGaussianCutoff : std::sqrt(3.0)) * bandwidth_;
}

double PulseSpectrum::upper() const noexcept {
    return center_ + (shape_ == SpectrumShape::Gaussian ? kGaussianCutoff : std::sqrt(3.0)) * bandwidth_;
}

namespace {

struct QuadratureResult {
    double value;
    double error;
    double l1;
};

template <class F>
QuadratureResult integrate(F &&f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0;
    double l1 = 0;
    const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12, &error, &l1);
    return {value, error, l1};
}

}  // namespace

namespace {

// Integrates f(omega) P(omega) over the spectrum window in the scaled
// variable x = (omega - center) / bandwidth, so the error estimate does not
// depend on the window width.
template <class F>
QuadratureResult integrate_spectrum(const PulseSpectrum &spectrum, F &&f) {
    const double c = spectrum.center();
    const double s = spectrum.bandwidth();
    return integrate(
        [&](double x) {
            const double w = c + s * x;
            return s * spectrum.power(w) * f(w);
        },
        (spectrum.lower() - c) / s, (spectrum.upper() - c) / s);
}

}  // namespace

double spectrum_norm(const PulseSpectrum &spectrum) {
    return integrate_spectrum(spectrum, [](double) { return 1.0; }).value;
}

Complex pulse_averaged_reflection(const PulseSpectrum &spectrum, double pz, const CavityParams &params,
                                  SpectralForm form) {
    const double norm = spectrum_norm(spectrum);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw Error(ErrorCode::QuadratureFailure, "pulse spectrum normalization off by " + std::to_string(norm - 1.0));
    }
    auto re = integrate_spectrum(spectrum, [&](double w) { return reflection_coefficient(w, pz, params, form).real(); });
    auto im = integrate_spectrum(spectrum, [&](double w) { return reflection_coefficient(w, pz, params, form).imag(); });
    const double budget = kQuadratureRelativeTolerance * (re.l1 + im.l1);
    if (!std::isfinite(re.value) || !std::isfinite(im.value) || re.error + im.error > budget) {
        throw Error(ErrorCode::QuadratureFailure, "reflection quadrature error " + std::to_string(re.error + im.error) +
                                                      " exceeds budget " + std::to_string(budget));
    }
    return {re.value, im.value};
}

CpfMode parse_cpf_mode(std::string_view text) {
    if (text == "ideal") {
        return CpfMode::Ideal;
    }
    if (text == "imperfect" || text == "narrowband-imperfect") {
        return CpfMode::NarrowbandImperfect;
    }
    throw Error(ErrorCode::InvalidMode, "unknown CPF mode '" + std::string(text) + "' (ideal|imperfect)");
}

std::string_view to_string(CpfMode mode) {
    return mode == CpfMode::Ideal ? "ideal" : "imperfect";
}

KrausChannel cpf_channel(double coupling_ratio, double pz, CpfMode mode) {
    if (mode == CpfMode::Ideal) {
        return KrausChannel::unitary(gates::controlled_phase_flip());
    }
    const double r1 = ideal_reflection(pz, coupling_ratio);
    Matrix coherent = Matrix::Zero(4, 4);
    coherent(0, 0) = 1;
    coherent(1, 1) = 1;
    coherent(2, 2) = r1;
    coherent(3, 3) = -1;
    Matrix scatter = Matrix::Zero(4, 4);
    scatter(2, 2) = std::sqrt(std::max(0.0, 1 - r1 * r1));
    return KrausChannel(2, {coherent, scatter}, {KrausTag::Coherent, KrausTag::Scatter});
}

KrausChannel cpf_channel(const CavityParams &params, double pz, CpfMode mode) {
    return cpf_channel(params.coupling_ratio(), pz, mode);
}

KrausChannel bypass_channel() {
    return KrausChannel::identity(2);
}

}  // namespace nlgate
