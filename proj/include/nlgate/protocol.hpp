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

#ifndef NLGATE_PROTOCOL_HPP
#define NLGATE_PROTOCOL_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "nlgate/cavity.hpp"
#include "nlgate/node_input.hpp"
#include "nlgate/noise.hpp"
#include "nlgate/qstate.hpp"
#include "nlgate/rng.hpp"

namespace nlgate {

enum class Pauli { I, X, Z, ZX };

Matrix pauli_matrix(Pauli p);
std::string_view to_string(Pauli p);
/// "v" or "h".
std::string_view to_string(Polarization p);

struct MeasurementRecord {
    Polarization r_a;
    Polarization r_b;

    friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;
};

struct Correction {
    Pauli on_a;
    Pauli on_b;

    friend bool operator==(const Correction &, const Correction &) = default;
};

/// Feed-forward corrections indexed by (r_a, r_b).
class CorrectionTable {
   public:
    CorrectionTable() = default;
    explicit CorrectionTable(std::array<Correction, 4> entries) : entries_(entries) {
    }

    const Correction &at(MeasurementRecord record) const noexcept {
        return entries_[index(record)];
    }
    /// Entries in the order (v,v), (v,h), (h,v), (h,h).
    const std::array<Correction, 4> &entries() const noexcept {
        return entries_;
    }
    static std::array<MeasurementRecord, 4> records() noexcept;

    friend bool operator==(const CorrectionTable &, const CorrectionTable &) = default;

   private:
    static std::size_t index(MeasurementRecord record) noexcept {
        return 2 * static_cast<std::size_t>(record.r_a) + static_cast<std::size_t>(record.r_b);
    }
    std::array<Correction, 4> entries_{};
};

/// CNOT (control A, target B) applied to the product input, as a vector on
/// the register {A, B}.
Vector reference_cnot(const NodeInput &node_a, const NodeInput &node_b);

/// Node qubits times the ebit (|h>|v> + |v>|h>)/sqrt(2) on (A1, B1).
DensityMatrix build_initial_state(const NodeInput &node_a, const NodeInput &node_b);

/// H on A1, CPF(A, A1), H on A1. A sub-normalized channel leaves the trace
/// below one.
DensityMatrix step_a(const DensityMatrix &state, const KrausChannel &cpf);

/// H on B, CPF(B, B1), H on B, then H on B1.
DensityMatrix step_b(const DensityMatrix &state, const KrausChannel &cpf);

/// Searches {I, X, Z, ZX}^2 per branch against an informationally complete
/// probe set. Throws NoValidCorrection or AmbiguousCorrection.
CorrectionTable derive_correction_table();

/// derive_correction_table, computed once per process.
const CorrectionTable &correction_table();

/// Applies the correction to labels A and B of `state`.
DensityMatrix apply_correction(const DensityMatrix &state, const Correction &correction);

struct ProtocolResult {
    MeasurementRecord record;
    /// Weight of this branch relative to the initial trace of one.
    double probability;
    /// Corrected, normalized state on {A, B}.
    DensityMatrix state_ab;
    double fidelity;
};

/// All four branches of the ideal protocol, enumerated exactly.
std::vector<ProtocolResult> run_ideal(const NodeInput &node_a, const NodeInput &node_b);

/// All four branches with the given CPF channels, photons detected perfectly.
/// Branch probabilities sum to the channels' joint survival.
std::vector<ProtocolResult> run_branches(const NodeInput &node_a, const NodeInput &node_b, const KrausChannel &cpf_a,
                                         const KrausChannel &cpf_b);

/// Survival-weighted mean fidelity over the branches.
double mean_branch_fidelity(const std::vector<ProtocolResult> &branches);

struct NodeCavity {
    double coupling_ratio = 100;
    double pz = 1;
};

/// What the Scatter part of an imperfect CPF does to the photon.
///
/// Dephase: the photon still reaches the detectors; the event only leaves a
/// record that removes the atom's coherence weight. Loss: the photon is
/// gone and the side sees dark counts at most.
enum class ScatterModel { Dephase, Loss };

ScatterModel parse_scatter_model(std::string_view text);
std::string_view to_string(ScatterModel model);

struct TrialSettings {
    NodeInput input_a = NodeInput::balanced();
    NodeInput input_b = NodeInput::balanced();
    NodeCavity cavity_a;
    NodeCavity cavity_b;
    CpfMode mode = CpfMode::NarrowbandImperfect;
    ScatterModel scatter = ScatterModel::Dephase;
    NoiseParams noise;
    /// Gate attempts per trial; every one must be accepted.
    int gates = 1;

    void validate() const;
};

enum class TrialStatus { Accepted, Discarded, FalsePositive };

std::string_view to_string(TrialStatus status);

struct SideOutcome {
    bool mismatched = false;
    /// Loss model only: the photon left through the scatter channel.
    bool scattered = false;
    SideDetection detection;
};

struct GateOutcome {
    SideOutcome side_a;
    SideOutcome side_b;
    TrialStatus status = TrialStatus::Discarded;
    std::optional<double> fidelity;
};

struct TrialOutcome {
    TrialStatus status = TrialStatus::Discarded;
    /// Product of the per-gate fidelities when every gate was accepted.
    std::optional<double> fidelity;
    /// Attempts actually made; a discard ends the trial.
    std::vector<GateOutcome> gates;
};

/// Samples trials for fixed settings. Uniform draws per gate, in order:
/// mismatch A, mismatch B, then for node A and node B in turn a scatter
/// draw, a Born draw for the photon, and the three detection draws.
class TrialRunner {
   public:
    explicit TrialRunner(TrialSettings settings);

    const TrialSettings &settings() const noexcept {
        return settings_;
    }
    TrialOutcome run(RngStream &rng) const;

   private:
    GateOutcome run_gate(RngStream &rng) const;
    DensityMatrix pass_node(const DensityMatrix &state, bool node_a, bool mismatched, RngStream &rng,
                            SideOutcome &side) const;

    TrialSettings settings_;
    DensityMatrix initial_;
    Vector target_;
    KrausChannel cpf_a_;
    KrausChannel cpf_b_;
    KrausChannel bypass_;
};

TrialOutcome run_trial(const TrialSettings &settings, RngStream &rng);

}  // namespace nlgate

#endif
