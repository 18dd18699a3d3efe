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

// Command-line front end: simulate, sweep, table1, spectrum, formulas.
//
// Exit codes: 0 success, 2 configuration error, 1 runtime failure. Failures
// print one JSON object on stderr: {"error": <code>, "message": <text>}.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlgate/cavity.hpp"
#include "nlgate/error.hpp"
#include "nlgate/harness.hpp"
#include "nlgate/noise.hpp"
#include "nlgate/protocol.hpp"

namespace {

using namespace nlgate;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int fail(std::string_view code, const std::string &message, int exit_code) {
    const nlohmann::json line = {{"error", code}, {"message", message}};
    std::cerr << line.dump() << '\n';
    return exit_code;
}

bool is_config_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidMode:
        case ErrorCode::NotNormalized:
        case ErrorCode::InvalidRegime:
        case ErrorCode::DegenerateDenominator:
            return true;
        default:
            return false;
    }
}

// Flag values collected as config keys, applied after the config file.
struct Overrides {
    ConfigValues values;
    std::string config_path;
    bool balanced = false;
    std::optional<std::size_t> random;

    void add(CLI::App *app, const std::string &flag, const std::string &key, const std::string &help) {
        app->add_option_function<std::string>(
            flag, [this, key](const std::string &v) { values[key] = v; }, help);
    }
};

void add_model_options(CLI::App *app, Overrides &o) {
    o.add(app, "--G", "cavity.G", "coupling ratio G = g^2/(gamma gamma_s), both sides");
    for (const std::string side : {"", "-A", "-B"}) {
        const std::string key = side.empty() ? "" : "_" + side.substr(1);
        if (!side.empty()) {
            o.add(app, "--G" + side, "cavity.G" + key, "coupling ratio of side " + side.substr(1));
        }
        o.add(app, "--g" + side, "cavity.g" + key, "atom-cavity coupling g");
        o.add(app, "--gamma" + side, "cavity.gamma" + key, "cavity decay rate");
        o.add(app, "--gamma-s" + side, "cavity.gamma_s" + key, "atomic decay rate");
        o.add(app, "--Pz" + side, "cavity.Pz" + key, "atomic population factor P_z");
    }
    o.add(app, "--pl", "noise.p_l", "photon loss probability");
    o.add(app, "--pdc", "noise.p_dc", "dark count probability per detector");
    o.add(app, "--f", "noise.f", "spectral mismatch probability");
    o.add(app, "--N", "run.N", "gates per trial");
    o.add(app, "--mode", "run.mode", "CPF model: ideal|imperfect");
    o.add(app, "--alpha", "inputs.alpha", "node A amplitude of |0> as re,im");
    o.add(app, "--beta", "inputs.beta", "node A amplitude of |1> as re,im");
    o.add(app, "--a", "inputs.a", "node B amplitude of |0> as re,im");
    o.add(app, "--b", "inputs.b", "node B amplitude of |1> as re,im");
    app->add_flag("--balanced", o.balanced, "equal-weight inputs on both nodes");
    app->add_option("--random", o.random, "draw this many random input pairs");
    o.add(app, "--format", "output.format", "csv|json");
    o.add(app, "--out", "output.path", "output file (default stdout)");
}

void add_run_options(CLI::App *app, Overrides &o) {
    add_model_options(app, o);
    o.add(app, "--seed", "run.seed", "master seed (u64)");
    o.add(app, "--trials", "run.trials", "trials per grid point");
    o.add(app, "--workers", "run.workers", "worker threads");
    o.add(app, "--scatter", "run.scatter", "scatter event model: dephase|loss");
    app->add_option("--config", o.config_path, "INI config file; flags win");
}

SweepConfig build_config(const Overrides &o) {
    SweepConfig config;
    if (!o.config_path.empty()) {
        apply_config(config, read_config_file(o.config_path));
    }
    ConfigValues flags = o.values;
    if (o.balanced && o.random) {
        throw Error(ErrorCode::ConfigError, "inputs.kind: --balanced and --random are exclusive");
    }
    const bool amplitudes = flags.count("inputs.alpha") || flags.count("inputs.beta") || flags.count("inputs.a") ||
                            flags.count("inputs.b");
    if (amplitudes && (o.balanced || o.random)) {
        throw Error(ErrorCode::ConfigError, "inputs.kind: explicit amplitudes conflict with --balanced/--random");
    }
    if (o.balanced) {
        flags["inputs.kind"] = "balanced";
    }
    if (o.random) {
        flags["inputs.kind"] = "random";
        flags["inputs.count"] = std::to_string(*o.random);
    }
    apply_config(config, flags);
    config.validate();
    return config;
}

// Output sink: the --out file when given, stdout otherwise.
class Sink {
   public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream &stream() {
        return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout;
    }

   private:
    std::ofstream file_;
};

void emit_rows(const SweepConfig &config, const std::vector<ResultRow> &rows) {
    Sink sink(config.out);
    if (config.format == OutputFormat::Json) {
        write_json(sink.stream(), rows);
    } else {
        write_csv(sink.stream(), rows);
    }
}

int cmd_simulate(const Overrides &o) {
    const SweepConfig config = build_config(o);
    if (config.grid_size() != 1) {
        throw Error(ErrorCode::ConfigError, "grid: simulate takes one value per parameter; use sweep for grids");
    }
    emit_rows(config, run_sweep(config));
    return kExitOk;
}

int cmd_sweep(const Overrides &o) {
    const SweepConfig config = build_config(o);
    emit_rows(config, run_sweep(config));
    return kExitOk;
}

int cmd_table1(const std::string &format) {
    const auto &table = correction_table();
    const auto records = CorrectionTable::records();
    if (format == "json") {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &r : records) {
            const auto &c = table.at(r);
            out.push_back({{"r_A", to_string(r.r_a)},
                           {"r_B", to_string(r.r_b)},
                           {"U_A", to_string(c.on_a)},
                           {"U_B", to_string(c.on_b)}});
        }
        std::cout << out.dump(1) << '\n';
        return kExitOk;
    }
    std::cout << "r_A,r_B,U_A,U_B\n";
    for (const auto &r : records) {
        const auto &c = table.at(r);
        std::cout << to_string(r.r_a) << ',' << to_string(r.r_b) << ',' << to_string(c.on_a) << ','
                  << to_string(c.on_b) << '\n';
    }
    return kExitOk;
}

struct SpectrumOptions {
    double g = 10;
    double gamma = 1;
    double gamma_s = 1;
    double pz = 1;
    int points = 101;
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    std::string form = "single";
    std::string format = "csv";
    std::string out;
};

int cmd_spectrum(const SpectrumOptions &s) {
    if (s.points < 1) {
        throw Error(ErrorCode::ConfigError, "points: must be at least 1");
    }
    SpectralForm form;
    if (s.form == "single") {
        form = SpectralForm::SingleExcitation;
    } else if (s.form == "printed") {
        form = SpectralForm::AsPrinted;
    } else {
        throw Error(ErrorCode::ConfigError, "form: expected single or printed, got '" + s.form + "'");
    }
    if (s.format != "csv" && s.format != "json") {
        throw Error(ErrorCode::ConfigError, "format: expected csv or json, got '" + s.format + "'");
    }
    const CavityParams params(s.g, s.gamma, s.gamma_s);
    if (s.pz < 0) {
        throw Error(ErrorCode::ConfigError, "Pz: must be non-negative");
    }
    const double lo = s.omega_min.value_or(-2 * s.gamma);
    const double hi = s.omega_max.value_or(2 * s.gamma);
    if (!(lo <= hi)) {
        throw Error(ErrorCode::ConfigError, "omega-min: must not exceed omega-max");
    }
    Sink sink(s.out);
    auto &os = sink.stream();
    nlohmann::json rows = nlohmann::json::array();
    if (s.format == "csv") {
        os << "omega,re_r,im_r,abs_r,arg_r\n";
    }
    for (int i = 0; i < s.points; ++i) {
        const double omega = s.points == 1 ? lo : lo + (hi - lo) * i / (s.points - 1);
        const Complex r = reflection_coefficient(omega, s.pz, params, form);
        if (s.format == "csv") {
            os << format_number(omega) << ',' << format_number(r.real()) << ',' << format_number(r.imag()) << ','
               << format_number(std::abs(r)) << ',' << format_number(std::arg(r)) << '\n';
        } else {
            rows.push_back({{"omega", omega},
                            {"re_r", r.real()},
                            {"im_r", r.imag()},
                            {"abs_r", std::abs(r)},
                            {"arg_r", std::arg(r)}});
        }
    }
    if (s.format == "json") {
        os << rows.dump(1) << '\n';
    }
    return kExitOk;
}

double single(const std::string &field, const std::vector<double> &grid) {
    if (grid.size() != 1) {
        throw Error(ErrorCode::ConfigError, field + ": formulas takes a single value");
    }
    return grid[0];
}

std::optional<double> guarded(auto &&f) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.code() == ErrorCode::InvalidRegime || e.code() == ErrorCode::DegenerateDenominator) {
            return std::nullopt;
        }
        throw;
    }
}

int cmd_formulas(const Overrides &o) {
    const SweepConfig c = build_config(o);
    double ga, gb;
    if (c.shared_coupling) {
        ga = gb = single("cavity.G", *c.shared_coupling);
    } else {
        ga = single("cavity.G_A", c.coupling_a.grid());
        gb = single("cavity.G_B", c.coupling_b.grid());
    }
    const double pza = single("cavity.Pz_A", c.pz_a);
    const double pzb = single("cavity.Pz_B", c.pz_b);
    const NoiseParams noise{single("noise.p_l", c.photon_loss), single("noise.p_dc", c.dark_count),
                            single("noise.f", c.mismatch)};
    NodeInput ia = c.input_a, ib = c.input_b;
    if (c.input_kind == InputKind::Balanced) {
        ia = ib = NodeInput::balanced();
    } else if (c.input_kind == InputKind::Random) {
        throw Error(ErrorCode::ConfigError, "inputs.kind: formulas needs explicit or balanced inputs");
    }
    const auto fid = analytic_fidelity(ia, ib, ga, gb, pza, pzb);
    const int n = c.gates;
    const std::vector<std::pair<std::string, std::optional<double>>> lines = {
        {"F", fid.value},
        {"Delta_A", delta(ga, pza)},
        {"Delta_B", delta(gb, pzb)},
        {"r1_A", ideal_reflection(pza, ga)},
        {"r1_B", ideal_reflection(pzb, gb)},
        {"R_A", resonant_reflectance(ga, pza)},
        {"R_B", resonant_reflectance(gb, pzb)},
        {"shrinking_factor", shrinking_factor(noise.photon_loss, noise.dark_count, n)},
        {"mismatch_factor", guarded([&] { return mismatch_factor(noise.mismatch, ga, pza, gb, pzb, n); })},
        {"total_fidelity_factor", guarded([&] { return total_fidelity_factor(noise, ga, pza, gb, pzb, n); })},
        {"success_probability", guarded([&] { return success_probability(noise.photon_loss, noise.dark_count, n); })},
        {"exact_success_probability", exact_success_probability(noise.photon_loss, noise.dark_count, n)},
    };
    Sink sink(c.out);
    auto &os = sink.stream();
    if (c.format == OutputFormat::Json) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto &[name, value] : lines) {
            out[name] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
        }
        out["F_clamped"] = fid.clamped;
        os << out.dump(1) << '\n';
        return kExitOk;
    }
    // Text output is for reading; use --format json for full precision.
    for (const auto &[name, value] : lines) {
        char buf[64] = "";
        if (value) {
            std::snprintf(buf, sizeof(buf), "%.6g", *value);
        }
        os << name << " = " << buf << '\n';
    }
    if (fid.clamped) {
        os << "F_clamped = true\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Nonlocal CNOT gate via cavity-assisted photon scattering"};
    app.require_subcommand(1);

    Overrides simulate_o, sweep_o, formulas_o;
    auto *simulate = app.add_subcommand("simulate", "run one configuration and print its result row");
    add_run_options(simulate, simulate_o);
    auto *sweep = app.add_subcommand("sweep", "run a parameter grid and print one row per point");
    add_run_options(sweep, sweep_o);

    std::string table_format = "csv";
    auto *table1 = app.add_subcommand("table1", "print the derived feed-forward correction table");
    table1->add_option("--format", table_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    SpectrumOptions spec;
    auto *spectrum = app.add_subcommand("spectrum", "tabulate r(omega) over a frequency grid");
    spectrum->add_option("--g", spec.g, "atom-cavity coupling g");
    spectrum->add_option("--gamma", spec.gamma, "cavity decay rate");
    spectrum->add_option("--gamma-s", spec.gamma_s, "atomic decay rate");
    spectrum->add_option("--Pz", spec.pz, "atomic population factor P_z");
    spectrum->add_option("--points", spec.points, "grid points");
    spectrum->add_option("--omega-min", spec.omega_min, "first detuning (default -2 gamma)");
    spectrum->add_option("--omega-max", spec.omega_max, "last detuning (default 2 gamma)");
    spectrum->add_option("--form", spec.form, "single|printed");
    spectrum->add_option("--format", spec.format, "csv|json");
    spectrum->add_option("--out", spec.out, "output file (default stdout)");

    auto *formulas = app.add_subcommand("formulas", "print the closed-form fidelity and noise factors");
    add_model_options(formulas, formulas_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("ConfigError", e.what(), kExitConfig);
    }

    try {
        if (simulate->parsed()) {
            return cmd_simulate(simulate_o);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_o);
        }
        if (table1->parsed()) {
            return cmd_table1(table_format);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(spec);
        }
        return cmd_formulas(formulas_o);
    } catch (const Error &e) {
        return fail(to_string(e.code()), e.what(), is_config_error(e.code()) ? kExitConfig : kExitRuntime);
    } catch (const std::exception &e) {
        return fail("RuntimeError", e.what(), kExitRuntime);
    }
}
