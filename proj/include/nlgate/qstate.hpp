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

#ifndef NLGATE_QSTATE_HPP
#define NLGATE_QSTATE_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nlgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Targets = std::vector<std::string>;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kDriftTolerance = 1e-10;
inline constexpr double kZeroProbability = 1e-15;
inline constexpr std::size_t kMaxQubits = 10;

// Labels of the protocol register: the two atoms and the two ebit photons.
inline constexpr std::string_view kAtomA = "A";
inline constexpr std::string_view kAtomB = "B";
inline constexpr std::string_view kPhotonA = "A1";
inline constexpr std::string_view kPhotonB = "B1";

/// Ordered labels of two-level subsystems.
///
/// Basis index bit k addresses label k, so label 0 is the least significant
/// bit. For the protocol register {A, B, A1, B1} the basis state
/// |A=1, B=0, A1=1, B1=0> has index 0b0101 = 5.
class Register {
   public:
    explicit Register(std::vector<std::string> labels);

    /// {A, B, A1, B1}
    static Register protocol();

    std::size_t size() const noexcept {
        return labels_.size();
    }
    std::size_t dimension() const noexcept {
        return std::size_t{1} << labels_.size();
    }
    const std::vector<std::string> &labels() const noexcept {
        return labels_;
    }

    /// Bit position of `label`; throws UnknownLabel.
    std::size_t position(std::string_view label) const;
    bool contains(std::string_view label) const noexcept;

    friend bool operator==(const Register &, const Register &) = default;

   private:
    std::vector<std::string> labels_;
};

/// Which physical event a Kraus operator stands for. Scatter operators carry
/// the weight that an imperfect cavity interaction removes from the coherent
/// reflection; callers decide whether that event loses the photon or only
/// leaves a which-path record.
enum class KrausTag { Coherent, Scatter };

class KrausChannel {
   public:
    /// Operators act on `arity` qubits (matrices 2^arity square) and must
    /// satisfy sum K^dag K <= I + 1e-12. An empty list is the zero map.
    KrausChannel(std::size_t arity, std::vector<Matrix> operators, std::vector<KrausTag> tags = {});

    static KrausChannel identity(std::size_t arity);
    static KrausChannel unitary(const Matrix &u);

    std::size_t arity() const noexcept {
        return arity_;
    }
    const std::vector<Matrix> &operators() const noexcept {
        return operators_;
    }
    const std::vector<KrausTag> &tags() const noexcept {
        return tags_;
    }

    /// Spectral norm of I - sum K^dag K.
    double completeness_defect() const;

    /// Sub-channel made of the operators carrying `tag`.
    KrausChannel select(KrausTag tag) const;
    bool has(KrausTag tag) const noexcept;

   private:
    std::size_t arity_;
    std::vector<Matrix> operators_;
    std::vector<KrausTag> tags_;
};

class DensityMatrix {
   public:
    /// Takes ownership of `rho`; only the shape is checked here.
    DensityMatrix(Register reg, Matrix rho);

    const Register &reg() const noexcept {
        return reg_;
    }
    const Matrix &matrix() const noexcept {
        return rho_;
    }
    double trace() const noexcept {
        return trace_;
    }

    double purity() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;

    /// rho / tr(rho); throws ZeroProbabilityBranch when tr(rho) <= 1e-15.
    DensityMatrix normalized() const;

   private:
    Register reg_;
    Matrix rho_;
    double trace_;
};

DensityMatrix pure_state(const Register &reg, const Vector &amplitudes);

DensityMatrix apply_unitary(const DensityMatrix &state, const Matrix &u, const Targets &targets);

struct KrausOutcome {
    DensityMatrix state;
    double survival;
};

/// sum_k K rho K^dag without renormalization; survival = trace of the result.
KrausOutcome apply_kraus(const DensityMatrix &state, const KrausChannel &channel, const Targets &targets);

enum class Renormalize : bool { No = false, Yes = true };

struct Projection {
    double probability;
    DensityMatrix state;
};

Projection project(const DensityMatrix &state, std::string_view label, int outcome,
                   Renormalize renormalize = Renormalize::Yes);

/// <psi|rho|psi>; invariant under the global phase of `reference`.
double fidelity(const DensityMatrix &state, const Vector &reference);

/// Reduced state on `kept`, whose order becomes the result's label order.
DensityMatrix partial_trace(const DensityMatrix &state, const Targets &kept);

/// Discards `label` and re-prepares it in |0>. Used for photons that never
/// reached a detector.
DensityMatrix reset(const DensityMatrix &state, std::string_view label);

namespace gates {

Matrix hadamard();
Matrix pauli_x();
Matrix pauli_z();
/// Z * X, the combined flip used by feed-forward corrections.
Matrix pauli_zx();
/// Control on local bit 0, target on local bit 1.
Matrix cnot();
/// diag(1, 1, 1, -1): the -1 sits on |1>|1>.
Matrix controlled_phase_flip();

}  // namespace gates

}  // namespace nlgate

#endif
