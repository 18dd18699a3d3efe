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

#include "nlgate/protocol.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nlgate/error.hpp"

namespace nlgate {

namespace {

constexpr double kTableTolerance = 1e-10;

const std::string kA(kAtomA);
const std::string kB(kAtomB);
const std::string kA1(kPhotonA);
const std::string kB1(kPhotonB);

constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Z, Pauli::ZX};

std::vector<std::pair<NodeInput, NodeInput>> probe_pairs() {
    const double s = std::sqrt(0.5);
    const Complex i{0, s};
    const std::array<NodeInput, 6> singles = {
        NodeInput(1, 0), NodeInput(0, 1), NodeInput(s, s), NodeInput(s, -s), NodeInput(s, i), NodeInput(s, -i),
    };
    std::vector<std::pair<NodeInput, NodeInput>> out;
    for (std::size_t k = 0; k < singles.size(); ++k) {
        out.emplace_back(singles[k], singles[(k + 3) % singles.size()]);
    }
    return out;
}

// 4x4 operator acting as `op` on local bit `bit` of an (atom, photon) pair.
Matrix on_local_bit(const Matrix &op, int bit) {
    Matrix out = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (((i ^ j) & ~(1 << bit) & 3) == 0) {
                out(i, j) = op((i >> bit) & 1, (j >> bit) & 1);
            }
        }
    }
    return out;
}

// Channel K -> after * K * before, tags kept.
KrausChannel dress(const KrausChannel &channel, const Matrix &before, const Matrix &after) {
    std::vector<Matrix> ops;
    for (const auto &k : channel.operators()) {
        ops.push_back(after * k * before);
    }
    return KrausChannel(channel.arity(), std::move(ops), channel.tags());
}

DensityMatrix branch_ab(const DensityMatrix &state, MeasurementRecord record) {
    auto a = project(state, kA1, static_cast<int>(record.r_a), Renormalize::No);
    auto b = project(a.state, kB1, static_cast<int>(record.r_b), Renormalize::No);
    return partial_trace(b.state, {kA, kB});
}

}  // namespace

Matrix pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::I:
            return Matrix::Identity(2, 2);
        case Pauli::X:
            return gates::pauli_x();
        case Pauli::Z:
            return gates::pauli_z();
        case Pauli::ZX:
            return gates::pauli_zx();
    }
    return Matrix::Identity(2, 2);
}

std::string_view to_string(Pauli p) {
    switch (p) {
        case Pauli::I:
            return "I";
        case Pauli::X:
            return "X";
        case Pauli::Z:
            return "Z";
        case Pauli::ZX:
            return "ZX";
    }
    return "?";
}

std::string_view to_string(Polarization p) {
    return p == Polarization::V ? "v" : "h";
}

std::array<MeasurementRecord, 4> CorrectionTable::records() noexcept {
    return {{{Polarization::V, Polarization::V},
             {Polarization::V, Polarization::H},
             {Polarization::H, Polarization::V},
             {Polarization::H, Polarization::H}}};
}

Vector reference_cnot(const NodeInput &node_a, const NodeInput &node_b) {
    const std::array<Complex, 2> a = {node_a.zero(), node_a.one()};
    const std::array<Complex, 2> b = {node_b.zero(), node_b.one()};
    Vector out = Vector::Zero(4);
    for (int xa = 0; xa < 2; ++xa) {
        for (int xb = 0; xb < 2; ++xb) {
            out(xa + 2 * (xb ^ xa)) += a[xa] * b[xb];
        }
    }
    return out;
}

DensityMatrix build_initial_state(const NodeInput &node_a, const NodeInput &node_b) {
    const std::array<Complex, 2> a = {node_a.zero(), node_a.one()};
    const std::array<Complex, 2> b = {node_b.zero(), node_b.one()};
    const double s = std::sqrt(0.5);
    Vector psi = Vector::Zero(16);
    for (int xa = 0; xa < 2; ++xa) {
        for (int xb = 0; xb < 2; ++xb) {
            // A1 = h, B1 = v and A1 = v, B1 = h.
            psi(xa | xb << 1 | 1 << 2) = s * a[xa] * b[xb];
            psi(xa | xb << 1 | 1 << 3) = s * a[xa] * b[xb];
        }
    }
    return pure_state(Register::protocol(), psi);
}

DensityMatrix step_a(const DensityMatrix &state, const KrausChannel &cpf) {
    const Matrix h_photon = on_local_bit(gates::hadamard(), 1);
    return apply_kraus(state, dress(cpf, h_photon, h_photon), {kA, kA1}).state;
}

DensityMatrix step_b(const DensityMatrix &state, const KrausChannel &cpf) {
    const Matrix h_atom = on_local_bit(gates::hadamard(), 0);
    const Matrix h_photon = on_local_bit(gates::hadamard(), 1);
    return apply_kraus(state, dress(cpf, h_atom, h_photon * h_atom), {kB, kB1}).state;
}

DensityMatrix apply_correction(const DensityMatrix &state, const Correction &correction) {
    auto s = apply_unitary(state, pauli_matrix(correction.on_a), {kA});
    return apply_unitary(s, pauli_matrix(correction.on_b), {kB});
}

CorrectionTable derive_correction_table() {
    const auto ideal = KrausChannel::unitary(gates::controlled_phase_flip());
    struct Probe {
        Vector target;
        std::array<DensityMatrix, 4> branches;
    };
    std::vector<Probe> probes;
    for (const auto &[u, w] : probe_pairs()) {
        const auto out = step_b(step_a(build_initial_state(u, w), ideal), ideal);
        const auto records = CorrectionTable::records();
        probes.push_back({reference_cnot(u, w),
                          {branch_ab(out, records[0]), branch_ab(out, records[1]), branch_ab(out, records[2]),
                           branch_ab(out, records[3])}});
    }

    std::array<Correction, 4> entries{};
    for (std::size_t r = 0; r < 4; ++r) {
        std::vector<Correction> found;
        for (Pauli pa : kPaulis) {
            for (Pauli pb : kPaulis) {
                const Correction c{pa, pb};
                bool ok = true;
                for (const auto &probe : probes) {
                    const auto fixed = apply_correction(probe.branches[r], c).normalized();
                    if (std::abs(fidelity(fixed, probe.target) - 1) > kTableTolerance) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    found.push_back(c);
                }
            }
        }
        const auto rec = CorrectionTable::records()[r];
        const std::string branch =
            "(" + std::string(to_string(rec.r_a)) + ", " + std::string(to_string(rec.r_b)) + ")";
        if (found.empty()) {
            throw Error(ErrorCode::NoValidCorrection, "no Pauli pair corrects branch " + branch);
        }
        if (found.size() > 1) {
            throw Error(ErrorCode::AmbiguousCorrection,
                        std::to_string(found.size()) + " Pauli pairs correct branch " + branch);
        }
        entries[r] = found.front();
    }
    return CorrectionTable(entries);
}

const CorrectionTable &correction_table() {
    static const CorrectionTable table = derive_correction_table();
    return table;
}

std::vector<ProtocolResult> run_branches(const NodeInput &node_a, const NodeInput &node_b, const KrausChannel &cpf_a,
                                         const KrausChannel &cpf_b) {
    const auto &table = correction_table();
    const auto out = step_b(step_a(build_initial_state(node_a, node_b), cpf_a), cpf_b);
    const Vector target = reference_cnot(node_a, node_b);
    std::vector<ProtocolResult> results;
    for (const auto &record : CorrectionTable::records()) {
        auto ab = apply_correction(branch_ab(out, record), table.at(record));
        const double p = ab.trace();
        if (p > kZeroProbability) {
            ab = ab.normalized();
        }
        const double f = p > kZeroProbability ? fidelity(ab, target) : 0.0;
        results.push_back({record, p, std::move(ab), f});
    }
    return results;
}

std::vector<ProtocolResult> run_ideal(const NodeInput &node_a, const NodeInput &node_b) {
    const auto ideal = KrausChannel::unitary(gates::controlled_phase_flip());
    return run_branches(node_a, node_b, ideal, ideal);
}

double mean_branch_fidelity(const std::vector<ProtocolResult> &branches) {
    double num = 0;
    double den = 0;
    for (const auto &b : branches) {
        num += b.probability * b.fidelity;
        den += b.probability;
    }
    if (den <= kZeroProbability) {
        throw Error(ErrorCode::ZeroProbabilityBranch, "no branch survives");
    }
    return num / den;
}

ScatterModel parse_scatter_model(std::string_view text) {
    if (text == "dephase") {
        return ScatterModel::Dephase;
    }
    if (text == "loss") {
        return ScatterModel::Loss;
    }
    throw Error(ErrorCode::InvalidMode, "unknown scatter model '" + std::string(text) + "' (dephase|loss)");
}

std::string_view to_string(ScatterModel model) {
    return model == ScatterModel::Dephase ? "dephase" : "loss";
}

std::string_view to_string(TrialStatus status) {
    switch (status) {
        case TrialStatus::Accepted:
            return "accepted";
        case TrialStatus::Discarded:
            return "discarded";
        case TrialStatus::FalsePositive:
            return "false_positive";
    }
    return "?";
}

void TrialSettings::validate() const {
    noise.validate();
    for (const auto *c : {&cavity_a, &cavity_b}) {
        if (!(c->coupling_ratio >= 0) || !(c->pz >= 0) || !std::isfinite(c->coupling_ratio) || !std::isfinite(c->pz)) {
            throw Error(ErrorCode::InvalidParams, "coupling ratio and P_z must be finite and non-negative");
        }
    }
    if (gates < 1) {
        throw Error(ErrorCode::InvalidParams, "gate count N must be at least 1");
    }
}

TrialRunner::TrialRunner(TrialSettings settings)
    : settings_((settings.validate(), std::move(settings))),
      initial_(build_initial_state(settings_.input_a, settings_.input_b)),
      target_(reference_cnot(settings_.input_a, settings_.input_b)),
      cpf_a_(cpf_channel(settings_.cavity_a.coupling_ratio, settings_.cavity_a.pz, settings_.mode)),
      cpf_b_(cpf_channel(settings_.cavity_b.coupling_ratio, settings_.cavity_b.pz, settings_.mode)),
      bypass_(bypass_channel()) {
    correction_table();
}

DensityMatrix TrialRunner::pass_node(const DensityMatrix &state, bool node_a, bool mismatched, RngStream &rng,
                                     SideOutcome &side) const {
    const auto &channel = mismatched ? bypass_ : (node_a ? cpf_a_ : cpf_b_);
    const auto step = node_a ? step_a : step_b;
    const std::string &photon = node_a ? kA1 : kB1;
    side.mismatched = mismatched;

    const double u_scatter = rng.uniform();
    DensityMatrix s = state;
    if (settings_.scatter == ScatterModel::Loss && channel.has(KrausTag::Scatter)) {
        auto kept = step(state, channel.select(KrausTag::Coherent));
        if (u_scatter < 1 - kept.trace()) {
            side.scattered = true;
            s = step(state, channel.select(KrausTag::Scatter)).normalized();
        } else {
            s = kept.normalized();
        }
    } else {
        s = step(state, channel);
    }

    const double u_born = rng.uniform();
    std::optional<Polarization> arriving;
    if (!side.scattered) {
        const double p_h = project(s, photon, 1, Renormalize::No).probability / s.trace();
        arriving = u_born < p_h ? Polarization::H : Polarization::V;
    }
    side.detection = detection_events(rng, settings_.noise.photon_loss, settings_.noise.dark_count, arriving);
    if (side.detection.verdict == SideVerdict::Accept && side.detection.photon_arrived) {
        return project(s, photon, static_cast<int>(*arriving)).state;
    }
    return reset(s, photon);
}

GateOutcome TrialRunner::run_gate(RngStream &rng) const {
    GateOutcome out;
    const bool mismatch_a = rng.bernoulli(settings_.noise.mismatch);
    const bool mismatch_b = rng.bernoulli(settings_.noise.mismatch);
    auto s = pass_node(initial_, true, mismatch_a, rng, out.side_a);
    s = pass_node(s, false, mismatch_b, rng, out.side_b);

    const auto &da = out.side_a.detection;
    const auto &db = out.side_b.detection;
    if (da.verdict != SideVerdict::Accept || db.verdict != SideVerdict::Accept) {
        out.status = TrialStatus::Discarded;
        return out;
    }
    out.status = (da.false_positive || db.false_positive) ? TrialStatus::FalsePositive : TrialStatus::Accepted;
    const MeasurementRecord record{*da.reading, *db.reading};
    auto ab = apply_correction(partial_trace(s, {kA, kB}), correction_table().at(record));
    out.fidelity = fidelity(ab.normalized(), target_);
    return out;
}

TrialOutcome TrialRunner::run(RngStream &rng) const {
    TrialOutcome out;
    double product = 1;
    bool false_positive = false;
    for (int g = 0; g < settings_.gates; ++g) {
        out.gates.push_back(run_gate(rng));
        const auto &gate = out.gates.back();
        if (gate.status == TrialStatus::Discarded) {
            out.status = TrialStatus::Discarded;
            return out;
        }
        false_positive = false_positive || gate.status == TrialStatus::FalsePositive;
        product *= *gate.fidelity;
    }
    out.status = false_positive ? TrialStatus::FalsePositive : TrialStatus::Accepted;
    out.fidelity = product;
    return out;
}

TrialOutcome run_trial(const TrialSettings &settings, RngStream &rng) {
    return TrialRunner(settings).run(rng);
}

}  // namespace nlgate
