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

#include "nlgate/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nlgate/error.hpp"

namespace nlgate {

namespace {

std::vector<std::size_t> positions_of(const Register &reg, const Targets &targets) {
    std::vector<std::size_t> out;
    out.reserve(targets.size());
    for (const auto &t : targets) {
        out.push_back(reg.position(t));
    }
    if (std::set<std::size_t>(out.begin(), out.end()).size() != out.size()) {
        throw Error(ErrorCode::DimensionMismatch, "target labels must be distinct");
    }
    return out;
}

// offsets[l] is the full-register index contribution of local index l.
std::vector<std::size_t> local_offsets(const std::vector<std::size_t> &positions) {
    std::vector<std::size_t> offsets(std::size_t{1} << positions.size(), 0);
    for (std::size_t l = 0; l < offsets.size(); ++l) {
        for (std::size_t p = 0; p < positions.size(); ++p) {
            if ((l >> p) & 1) {
                offsets[l] |= std::size_t{1} << positions[p];
            }
        }
    }
    return offsets;
}

std::size_t target_mask(const std::vector<std::size_t> &positions) {
    std::size_t mask = 0;
    for (auto p : positions) {
        mask |= std::size_t{1} << p;
    }
    return mask;
}

// m <- (op on positions) * m
Matrix left_apply(const Matrix &op, const Matrix &m, const std::vector<std::size_t> &positions) {
    const auto offsets = local_offsets(positions);
    const std::size_t mask = target_mask(positions);
    const std::size_t k = offsets.size();
    const auto rows = static_cast<std::size_t>(m.rows());
    Matrix out(m.rows(), m.cols());
    std::vector<Complex> local(k);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const Complex *src = m.data() + c * m.rows();
        Complex *dst = out.data() + c * m.rows();
        for (std::size_t base = 0; base < rows; ++base) {
            if (base & mask) {
                continue;
            }
            for (std::size_t l = 0; l < k; ++l) {
                local[l] = src[base | offsets[l]];
            }
            for (std::size_t r = 0; r < k; ++r) {
                Complex acc = 0;
                for (std::size_t l = 0; l < k; ++l) {
                    acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) * local[l];
                }
                dst[base | offsets[r]] = acc;
            }
        }
    }
    return out;
}

// m <- m * (op on positions)^dag
Matrix right_apply_adjoint(const Matrix &op, const Matrix &m, const std::vector<std::size_t> &positions) {
    const auto offsets = local_offsets(positions);
    const std::size_t mask = target_mask(positions);
    const std::size_t k = offsets.size();
    const auto cols = static_cast<std::size_t>(m.cols());
    const Matrix conj_op = op.conjugate();
    Matrix out(m.rows(), m.cols());
    for (std::size_t base = 0; base < cols; ++base) {
        if (base & mask) {
            continue;
        }
        for (std::size_t r = 0; r < k; ++r) {
            auto dst = out.col(static_cast<Eigen::Index>(base | offsets[r]));
            dst.setZero();
            for (std::size_t l = 0; l < k; ++l) {
                const Complex w = conj_op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l));
                if (w != Complex(0)) {
                    dst += w * m.col(static_cast<Eigen::Index>(base | offsets[l]));
                }
            }
        }
    }
    return out;
}

bool is_diagonal(const Matrix &op) {
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
        for (Eigen::Index r = 0; r < op.rows(); ++r) {
            if (r != c && op(r, c) != Complex(0)) {
                return false;
            }
        }
    }
    return true;
}

// op rho op^dag with op acting on `positions`.
Matrix conjugate(const Matrix &op, const Matrix &rho, const std::vector<std::size_t> &positions) {
    if (is_diagonal(op)) {
        const auto n = static_cast<std::size_t>(rho.rows());
        Vector d(rho.rows());
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t local = 0;
            for (std::size_t p = 0; p < positions.size(); ++p) {
                local |= ((i >> positions[p]) & 1) << p;
            }
            d(static_cast<Eigen::Index>(i)) = op(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local));
        }
        return d.asDiagonal() * rho * d.conjugate().asDiagonal();
    }
    return right_apply_adjoint(op, left_apply(op, rho, positions), positions);
}

void require_square(const Matrix &m, std::size_t arity) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << arity);
    if (m.rows() != dim || m.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "operator is " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + ", expected " +
                                                      std::to_string(dim) + "x" + std::to_string(dim));
    }
}

}  // namespace

Register::Register(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > kMaxQubits) {
        throw Error(ErrorCode::DimensionMismatch,
                    "register needs 1.." + std::to_string(kMaxQubits) + " labels");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "register labels must be unique");
    }
}

Register Register::protocol() {
    return Register({std::string(kAtomA), std::string(kAtomB), std::string(kPhotonA), std::string(kPhotonB)});
}

std::size_t Register::position(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(ErrorCode::UnknownLabel, "unknown label '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

bool Register::contains(std::string_view label) const noexcept {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

KrausChannel::KrausChannel(std::size_t arity, std::vector<Matrix> operators, std::vector<KrausTag> tags)
    : arity_(arity), operators_(std::move(operators)), tags_(std::move(tags)) {
    if (arity_ == 0 || arity_ > kMaxQubits) {
        throw Error(ErrorCode::DimensionMismatch, "channel arity out of range");
    }
    if (tags_.empty()) {
        tags_.assign(operators_.size(), KrausTag::Coherent);
    }
    if (tags_.size() != operators_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one tag per Kraus operator");
    }
    for (const auto &k : operators_) {
        require_square(k, arity_);
    }
    if (!operators_.empty()) {
        Matrix sum = Matrix::Zero(operators_[0].rows(), operators_[0].cols());
        for (const auto &k : operators_) {
            sum += k.adjoint() * k;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sum, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().maxCoeff() > 1 + kConstructionTolerance) {
            throw Error(ErrorCode::InvalidParams, "Kraus operators exceed completeness (sum K^dag K > I)");
        }
    }
}

KrausChannel KrausChannel::identity(std::size_t arity) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << arity);
    return KrausChannel(arity, {Matrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const Matrix &u) {
    const auto arity = static_cast<std::size_t>(std::lround(std::log2(static_cast<double>(u.rows()))));
    return KrausChannel(arity, {u});
}

double KrausChannel::completeness_defect() const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << arity_);
    Matrix defect = Matrix::Identity(dim, dim);
    for (const auto &k : operators_) {
        defect -= k.adjoint() * k;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(defect, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::select(KrausTag tag) const {
    std::vector<Matrix> ops;
    std::vector<KrausTag> tags;
    for (std::size_t i = 0; i < operators_.size(); ++i) {
        if (tags_[i] == tag) {
            ops.push_back(operators_[i]);
            tags.push_back(tag);
        }
    }
    return KrausChannel(arity_, std::move(ops), std::move(tags));
}

bool KrausChannel::has(KrausTag tag) const noexcept {
    return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

DensityMatrix::DensityMatrix(Register reg, Matrix rho) : reg_(std::move(reg)), rho_(std::move(rho)) {
    const auto dim = static_cast<Eigen::Index>(reg_.dimension());
    if (rho_.rows() != dim || rho_.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix shape does not match register");
    }
    trace_ = rho_.trace().real();
}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

double DensityMatrix::hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Matrix herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::normalized() const {
    if (trace_ <= kZeroProbability) {
        throw Error(ErrorCode::ZeroProbabilityBranch, "cannot renormalize a zero-trace state");
    }
    return DensityMatrix(reg_, rho_ / trace_);
}

DensityMatrix pure_state(const Register &reg, const Vector &amplitudes) {
    if (static_cast<std::size_t>(amplitudes.size()) != reg.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude vector has length " +
                                                      std::to_string(amplitudes.size()) + ", register needs " +
                                                      std::to_string(reg.dimension()));
    }
    if (std::abs(amplitudes.norm() - 1.0) > kConstructionTolerance) {
        throw Error(ErrorCode::NotNormalized, "amplitude vector is not normalized");
    }
    return DensityMatrix(reg, amplitudes * amplitudes.adjoint());
}

DensityMatrix apply_unitary(const DensityMatrix &state, const Matrix &u, const Targets &targets) {
    const auto positions = positions_of(state.reg(), targets);
    require_square(u, positions.size());
    const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > kConstructionTolerance) {
        throw Error(ErrorCode::NotUnitary, "operator is not unitary");
    }
    return DensityMatrix(state.reg(), conjugate(u, state.matrix(), positions));
}

KrausOutcome apply_kraus(const DensityMatrix &state, const KrausChannel &channel, const Targets &targets) {
    const auto positions = positions_of(state.reg(), targets);
    if (positions.size() != channel.arity()) {
        throw Error(ErrorCode::DimensionMismatch, "channel arity " + std::to_string(channel.arity()) +
                                                      " does not match " + std::to_string(positions.size()) +
                                                      " targets");
    }
    Matrix out = Matrix::Zero(state.matrix().rows(), state.matrix().cols());
    for (const auto &k : channel.operators()) {
        out += conjugate(k, state.matrix(), positions);
    }
    DensityMatrix result(state.reg(), std::move(out));
    const double survival = result.trace();
    return {std::move(result), survival};
}

Projection project(const DensityMatrix &state, std::string_view label, int outcome, Renormalize renormalize) {
    if (outcome != 0 && outcome != 1) {
        throw Error(ErrorCode::InvalidParams, "measurement outcome must be 0 or 1");
    }
    const std::size_t bit = std::size_t{1} << state.reg().position(label);
    const std::size_t want = outcome ? bit : 0;
    Matrix out = state.matrix();
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            if ((static_cast<std::size_t>(i) & bit) != want || (static_cast<std::size_t>(j) & bit) != want) {
                out(i, j) = 0;
            }
        }
    }
    DensityMatrix projected(state.reg(), std::move(out));
    const double p = projected.trace();
    if (renormalize == Renormalize::Yes) {
        if (p <= kZeroProbability) {
            throw Error(ErrorCode::ZeroProbabilityBranch,
                        "outcome " + std::to_string(outcome) + " on " + std::string(label) + " has zero probability");
        }
        return {p, projected.normalized()};
    }
    return {p, std::move(projected)};
}

double fidelity(const DensityMatrix &state, const Vector &reference) {
    if (static_cast<std::size_t>(reference.size()) != state.reg().dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "reference state dimension does not match register");
    }
    return reference.dot(state.matrix() * reference).real();
}

DensityMatrix partial_trace(const DensityMatrix &state, const Targets &kept) {
    if (kept.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "partial trace must keep at least one label");
    }
    const auto kept_pos = positions_of(state.reg(), kept);
    std::vector<std::size_t> traced_pos;
    for (std::size_t p = 0; p < state.reg().size(); ++p) {
        if (std::find(kept_pos.begin(), kept_pos.end(), p) == kept_pos.end()) {
            traced_pos.push_back(p);
        }
    }
    const auto kept_offsets = local_offsets(kept_pos);
    const auto traced_offsets = local_offsets(traced_pos);
    const auto dim = static_cast<Eigen::Index>(kept_offsets.size());
    Matrix out = Matrix::Zero(dim, dim);
    const Matrix &rho = state.matrix();
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            Complex acc = 0;
            for (auto t : traced_offsets) {
                acc += rho(static_cast<Eigen::Index>(kept_offsets[i] | t), static_cast<Eigen::Index>(kept_offsets[j] | t));
            }
            out(i, j) = acc;
        }
    }
    return DensityMatrix(Register(kept), std::move(out));
}

DensityMatrix reset(const DensityMatrix &state, std::string_view label) {
    static const KrausChannel to_zero = [] {
        Matrix keep_zero = Matrix::Zero(2, 2);
        keep_zero(0, 0) = 1;
        Matrix lower = Matrix::Zero(2, 2);
        lower(0, 1) = 1;
        return KrausChannel(1, {keep_zero, lower});
    }();
    return apply_kraus(state, to_zero, {std::string(label)}).state;
}

namespace gates {

Matrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix h(2, 2);
    h << s, s, s, -s;
    return h;
}

Matrix pauli_x() {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

Matrix pauli_z() {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

Matrix pauli_zx() {
    return pauli_z() * pauli_x();
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(3, 1) = 1;
    m(2, 2) = 1;
    m(1, 3) = 1;
    return m;
}

Matrix controlled_phase_flip() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

}  // namespace gates

}  // namespace nlgate
