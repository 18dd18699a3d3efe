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

#ifndef NLGATE_CAVITY_HPP
#define NLGATE_CAVITY_HPP

#include <string_view>

#include "nlgate/error.hpp"
#include "nlgate/qstate.hpp"

namespace nlgate {

/// Single-node cavity QED parameters, all in the same angular frequency unit.
/// Detuning between the h-polarized carrier and the |0> <-> |e> line is zero.
class CavityParams {
   public:
    /// g >= 0, gamma > 0, gamma_s > 0; throws InvalidParams otherwise.
    CavityParams(double g, double gamma, double gamma_s);

    double g() const noexcept {
        return g_;
    }
    double gamma() const noexcept {
        return gamma_;
    }
    double gamma_s() const noexcept {
        return gamma_s_;
    }
    /// G = g^2 / (gamma * gamma_s)
    double coupling_ratio() const noexcept {
        return g_ * g_ / (gamma_ * gamma_s_);
    }

   private:
    double g_;
    double gamma_;
    double gamma_s_;
};

/// Off-resonance shape of the atomic self-energy in r(omega).
///
/// SingleExcitation uses g^2 P_z / (omega + i gamma_s/2). AsPrinted keeps the
/// extra factor i gamma_s / (omega + i gamma_s), which multiplies a delta
/// function in the atomic population solution and should collapse to 1; left
/// in, it makes |r| exceed 1 for |omega| > gamma_s / sqrt(2). Both agree at
/// omega = 0.
enum class SpectralForm { SingleExcitation, AsPrinted };

/// Amplitude reflection coefficient of an h-polarized photon at offset
/// `omega` from the cavity resonance, with `pz` atoms in the coupled level.
Complex reflection_coefficient(double omega, double pz, const CavityParams &params,
                               SpectralForm form = SpectralForm::SingleExcitation);

namespace detail {
template <class Real>
void require_nonnegative(const Real &coupling_ratio, const Real &pz) {
    if (coupling_ratio < 0 || pz < 0) {
        throw Error(ErrorCode::InvalidParams, "coupling ratio and P_z must be non-negative");
    }
}
}  // namespace detail

// The closed forms below are templates so they can be checked at extended
// precision; the library itself only instantiates them for double.

/// Narrowband (omega -> 0) reflection: (4 G P_z - 1) / (4 G P_z + 1).
template <class Real = double>
Real ideal_reflection(const Real &pz, const Real &coupling_ratio) {
    detail::require_nonnegative(coupling_ratio, pz);
    const Real x = Real(4) * coupling_ratio * pz;
    return (x - Real(1)) / (x + Real(1));
}

/// Factor multiplying the |1><0| atomic coherence after one narrowband
/// photon: 1 - 8 G / (1 + 4 G P_z)^2.
template <class Real = double>
Real coherence_survival(const Real &coupling_ratio, const Real &pz) {
    detail::require_nonnegative(coupling_ratio, pz);
    const Real d = Real(1) + Real(4) * coupling_ratio * pz;
    return Real(1) - Real(8) * coupling_ratio / (d * d);
}

/// Resonant intensity reflection R = ((1 - 4 G P_z) / (1 + 4 G P_z))^2.
template <class Real = double>
Real resonant_reflectance(const Real &coupling_ratio, const Real &pz) {
    detail::require_nonnegative(coupling_ratio, pz);
    const Real x = Real(4) * coupling_ratio * pz;
    const Real r = (Real(1) - x) / (Real(1) + x);
    return r * r;
}

enum class SpectrumShape { Gaussian, FlatTop };

/// Normalized single-photon power spectrum |f(omega)|^2. `bandwidth` is the
/// standard deviation of the power spectrum for both shapes, so a flat top
/// spans center +- sqrt(3) * bandwidth.
class PulseSpectrum {
   public:
    PulseSpectrum(SpectrumShape shape, double center, double bandwidth);

    SpectrumShape shape() const noexcept {
        return shape_;
    }
    double center() const noexcept {
        return center_;
    }
    double bandwidth() const noexcept {
        return bandwidth_;
    }

    double power(double omega) const;
    /// Integration window: +-8 sigma for gaussians, the exact support for flat tops.
    double lower() const noexcept;
    double upper() const noexcept;

   private:
    SpectrumShape shape_;
    double center_;
    double bandwidth_;
};

inline constexpr double kQuadratureRelativeTolerance = 1e-8;

/// Integral of |f(omega)|^2 under the module's quadrature; 1 within 1e-9.
double spectrum_norm(const PulseSpectrum &spectrum);

/// Spectrum-weighted reflection, integral |f(omega)|^2 r(omega) d omega.
/// Throws QuadratureFailure when the estimated error exceeds 1e-8 relative to
/// the integrand's L1 norm.
Complex pulse_averaged_reflection(const PulseSpectrum &spectrum, double pz, const CavityParams &params,
                                  SpectralForm form = SpectralForm::SingleExcitation);

enum class CpfMode { Ideal, NarrowbandImperfect };

/// Accepts "ideal", "imperfect" and "narrowband-imperfect"; throws InvalidMode.
CpfMode parse_cpf_mode(std::string_view text);
std::string_view to_string(CpfMode mode);

/// Controlled phase flip between an atom and a reflected photon, acting on
/// targets (atom, photon) with local basis {|0v>, |1v>, |0h>, |1h>}.
///
/// Ideal: the single unitary diag(1, 1, 1, -1).
/// NarrowbandImperfect: coherent operator diag(1, 1, r1, -1), r1 the
/// narrowband reflection of the coupled branch, plus a Scatter-tagged
/// sqrt(1 - r1^2) |0h><0h| carrying the remaining weight. Together they are
/// trace preserving; the coherent operator alone leaves r1^2 on |0h>.
KrausChannel cpf_channel(double coupling_ratio, double pz, CpfMode mode);
KrausChannel cpf_channel(const CavityParams &params, double pz, CpfMode mode);

/// Photon reflected off the input mirror without entering the cavity.
KrausChannel bypass_channel();

}  // namespace nlgate

#endif
