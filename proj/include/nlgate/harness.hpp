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

#ifndef NLGATE_HARNESS_HPP
#define NLGATE_HARNESS_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nlgate/cavity.hpp"
#include "nlgate/node_input.hpp"
#include "nlgate/protocol.hpp"

namespace nlgate {

enum class InputKind { Explicit, Balanced, Random };
enum class OutputFormat { Csv, Json };

/// Coupling of one side: either a list of G values or one (g, gamma, gamma_s)
/// triple.
struct SideCoupling {
    std::vector<double> coupling_ratios;
    std::optional<CavityParams> cavity;

    std::vector<double> grid() const;
};

struct SweepConfig {
    InputKind input_kind = InputKind::Balanced;
    NodeInput input_a = NodeInput::balanced();
    NodeInput input_b = NodeInput::balanced();
    /// Input pairs drawn for InputKind::Random; trial t uses pair t % count.
    std::size_t random_count = 1;

    /// When `shared_coupling` is set, G_A = G_B pointwise over this list and
    /// the per-side fields are ignored.
    std::optional<std::vector<double>> shared_coupling;
    SideCoupling coupling_a{{100}, std::nullopt};
    SideCoupling coupling_b{{100}, std::nullopt};
    std::vector<double> pz_a{1};
    std::vector<double> pz_b{1};

    std::vector<double> photon_loss{0};
    std::vector<double> dark_count{0};
    std::vector<double> mismatch{0};

    int gates = 1;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    CpfMode mode = CpfMode::NarrowbandImperfect;
    ScatterModel scatter = ScatterModel::Dephase;
    std::string out;
    OutputFormat format = OutputFormat::Csv;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// Number of rows run_sweep produces.
    std::size_t grid_size() const;
};

/// Flat key/value view of a config: "section.key" -> raw text.
using ConfigValues = std::map<std::string, std::string>;

/// Reads an INI document into ConfigValues; throws ConfigError on syntax errors.
ConfigValues read_config_file(const std::string &path);

/// Applies `values` on top of `config`. Keys:
///   run.seed run.trials run.workers run.mode run.scatter run.N
///   inputs.kind inputs.alpha inputs.beta inputs.a inputs.b inputs.count
///   cavity.G cavity.G_A cavity.G_B cavity.{g,gamma,gamma_s}_{A,B}
///   cavity.Pz cavity.Pz_A cavity.Pz_B
///   noise.p_l noise.p_dc noise.f
///   output.path output.format
/// Grids are comma separated; complex amplitudes are "re,im".
void apply_config(SweepConfig &config, const ConfigValues &values);

std::vector<double> parse_grid(const std::string &field, const std::string &text);
std::complex<double> parse_complex(const std::string &field, const std::string &text);

struct Estimate {
    double mean;
    double stderr_;
};

struct Estimates {
    Estimate acceptance;
    /// Absent when no trial was accepted.
    std::optional<Estimate> fidelity;
};

/// Binomial acceptance estimate over `trials`, sample mean and standard
/// error of the accepted fidelities.
Estimates estimate(std::uint64_t trials, const std::vector<double> &accepted_fidelities);

struct ResultRow {
    double coupling_a;
    double coupling_b;
    double pz_a;
    double pz_b;
    double photon_loss;
    double dark_count;
    double mismatch;
    int gates;
    std::uint64_t trials;
    std::uint64_t accepted;
    std::uint64_t discarded;
    std::uint64_t false_positive;
    Estimate acceptance;
    std::optional<Estimate> fidelity;
    std::optional<double> analytic_fidelity;
    std::optional<double> analytic_success;
    std::optional<double> analytic_total_factor;
    std::uint64_t seed;
};

/// One row per grid point, in the order G pairs, P_z,A, P_z,B, p_l, p_dc, f
/// (last index fastest). Trial t of point k draws from RngStream(seed, t, k);
/// results are reduced in trial order, so output does not depend on workers.
std::vector<ResultRow> run_sweep(const SweepConfig &config);

const std::vector<std::string> &csv_columns();
/// %.17g for floating values, empty field for absent ones.
void write_csv(std::ostream &out, const std::vector<ResultRow> &rows);
/// Array of objects keyed by the CSV columns; absent values are null.
void write_json(std::ostream &out, const std::vector<ResultRow> &rows);

std::string format_number(double value);

}  // namespace nlgate

#endif
