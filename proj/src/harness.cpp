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

#include "nlgate/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nlgate/error.hpp"
#include "nlgate/noise.hpp"
#include "nlgate/rng.hpp"

namespace nlgate {

namespace {

constexpr std::uint32_t kInputSubstream = 0xFFFFFFFFu;

[[noreturn]] void config_error(const std::string &field, const std::string &message) {
    throw Error(ErrorCode::ConfigError, field + ": " + message);
}

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_double(const std::string &field, const std::string &text) {
    const std::string t = trim(text);
    double value = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
        config_error(field, "cannot parse '" + text + "' as a number");
    }
    return value;
}

template <class Int>
Int parse_integer(const std::string &field, const std::string &text) {
    const std::string t = trim(text);
    Int value = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
        config_error(field, "cannot parse '" + text + "' as a non-negative integer");
    }
    return value;
}

template <class F>
auto wrap_mode_error(const std::string &field, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        config_error(field, e.what());
    }
}

void require_grid(const std::string &field, const std::vector<double> &grid, double lo, double hi) {
    if (grid.empty()) {
        config_error(field, "grid is empty");
    }
    for (double v : grid) {
        if (!std::isfinite(v) || v < lo || v > hi) {
            config_error(field, "value " + format_number(v) + " outside [" + format_number(lo) + ", " +
                                    format_number(hi) + "]");
        }
    }
}

NodeInput random_input(RngStream &rng) {
    const double weight = rng.uniform();
    const double phase = 2 * std::numbers::pi * rng.uniform();
    return {std::sqrt(weight), std::polar(std::sqrt(1 - weight), phase)};
}

struct CouplingPair {
    double a;
    double b;
};

std::vector<CouplingPair> coupling_pairs(const SweepConfig &config) {
    std::vector<CouplingPair> pairs;
    if (config.shared_coupling) {
        for (double g : *config.shared_coupling) {
            pairs.push_back({g, g});
        }
        return pairs;
    }
    for (double a : config.coupling_a.grid()) {
        for (double b : config.coupling_b.grid()) {
            pairs.push_back({a, b});
        }
    }
    return pairs;
}

struct TrialRecord {
    TrialStatus status = TrialStatus::Discarded;
    double fidelity = 0;
};

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

}  // namespace

std::vector<double> SideCoupling::grid() const {
    if (cavity) {
        return {cavity->coupling_ratio()};
    }
    return coupling_ratios;
}

std::vector<double> parse_grid(const std::string &field, const std::string &text) {
    std::vector<double> out;
    for (const auto &part : split(text, ',')) {
        out.push_back(parse_double(field, part));
    }
    return out;
}

std::complex<double> parse_complex(const std::string &field, const std::string &text) {
    const auto parts = split(text, ',');
    if (parts.size() > 2) {
        config_error(field, "complex value must be 're' or 're,im'");
    }
    const double re = parse_double(field, parts[0]);
    const double im = parts.size() == 2 ? parse_double(field, parts[1]) : 0.0;
    return {re, im};
}

void SweepConfig::validate() const {
    if (shared_coupling) {
        require_grid("cavity.G", *shared_coupling, 0, HUGE_VAL);
    } else {
        require_grid("cavity.G_A", coupling_a.grid(), 0, HUGE_VAL);
        require_grid("cavity.G_B", coupling_b.grid(), 0, HUGE_VAL);
    }
    require_grid("cavity.Pz_A", pz_a, 0, HUGE_VAL);
    require_grid("cavity.Pz_B", pz_b, 0, HUGE_VAL);
    require_grid("noise.p_l", photon_loss, 0, 1);
    require_grid("noise.p_dc", dark_count, 0, 1);
    require_grid("noise.f", mismatch, 0, 1);
    if (gates < 1) {
        config_error("run.N", "must be at least 1");
    }
    if (trials < 1) {
        config_error("run.trials", "must be at least 1");
    }
    if (workers < 1) {
        config_error("run.workers", "must be at least 1");
    }
    if (input_kind == InputKind::Random && random_count < 1) {
        config_error("inputs.count", "must be at least 1");
    }
    if (grid_size() >= kInputSubstream) {
        config_error("grid", "too many grid points");
    }
}

std::size_t SweepConfig::grid_size() const {
    const std::size_t couplings =
        shared_coupling ? shared_coupling->size() : coupling_a.grid().size() * coupling_b.grid().size();
    return couplings * pz_a.size() * pz_b.size() * photon_loss.size() * dark_count.size() * mismatch.size();
}

ConfigValues read_config_file(const std::string &path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error &e) {
        config_error("config", e.what());
    }
    ConfigValues values;
    for (const auto &[section, body] : tree) {
        if (body.empty()) {
            values[section] = body.data();
            continue;
        }
        for (const auto &[key, leaf] : body) {
            values[section + "." + key] = leaf.data();
        }
    }
    return values;
}

void apply_config(SweepConfig &config, const ConfigValues &values) {
    struct Triple {
        std::optional<double> g, gamma, gamma_s;
        bool any() const {
            return g || gamma || gamma_s;
        }
    };
    Triple triple_a, triple_b;
    bool set_g_a = false, set_g_b = false;
    std::optional<std::complex<double>> alpha, beta, a, b;

    for (const auto &[key, raw] : values) {
        const std::string value = trim(raw);
        if (key == "run.seed") {
            config.seed = parse_integer<std::uint64_t>(key, value);
        } else if (key == "run.trials") {
            config.trials = parse_integer<std::uint64_t>(key, value);
        } else if (key == "run.workers") {
            config.workers = parse_integer<unsigned>(key, value);
        } else if (key == "run.N") {
            config.gates = parse_integer<int>(key, value);
        } else if (key == "run.mode") {
            config.mode = wrap_mode_error(key, [&] { return parse_cpf_mode(value); });
        } else if (key == "run.scatter") {
            config.scatter = wrap_mode_error(key, [&] { return parse_scatter_model(value); });
        } else if (key == "inputs.kind") {
            if (value == "balanced") {
                config.input_kind = InputKind::Balanced;
            } else if (value == "explicit") {
                config.input_kind = InputKind::Explicit;
            } else if (value == "random") {
                config.input_kind = InputKind::Random;
            } else {
                config_error(key, "expected balanced, explicit or random, got '" + value + "'");
            }
        } else if (key == "inputs.alpha") {
            alpha = parse_complex(key, value);
        } else if (key == "inputs.beta") {
            beta = parse_complex(key, value);
        } else if (key == "inputs.a") {
            a = parse_complex(key, value);
        } else if (key == "inputs.b") {
            b = parse_complex(key, value);
        } else if (key == "inputs.count") {
            config.random_count = parse_integer<std::size_t>(key, value);
        } else if (key == "cavity.G") {
            config.shared_coupling = parse_grid(key, value);
            set_g_a = set_g_b = true;
        } else if (key == "cavity.G_A" || key == "cavity.G_B") {
            if (config.shared_coupling) {
                config.coupling_a = config.coupling_b = {*config.shared_coupling, std::nullopt};
                config.shared_coupling.reset();
            }
            (key == "cavity.G_A" ? config.coupling_a : config.coupling_b) = {parse_grid(key, value), std::nullopt};
            (key == "cavity.G_A" ? set_g_a : set_g_b) = true;
        } else if (key == "cavity.g" || key == "cavity.gamma" || key == "cavity.gamma_s" || key == "cavity.g_A" ||
                   key == "cavity.gamma_A" || key == "cavity.gamma_s_A" || key == "cavity.g_B" ||
                   key == "cavity.gamma_B" || key == "cavity.gamma_s_B") {
            const double v = parse_double(key, value);
            const std::string name = key.substr(7);
            const bool side_a = !name.ends_with("_B");
            const bool side_b = !name.ends_with("_A");
            const std::string base = (side_a && side_b) ? name : name.substr(0, name.size() - 2);
            for (auto [enabled, triple] : {std::pair{side_a, &triple_a}, std::pair{side_b, &triple_b}}) {
                if (!enabled) {
                    continue;
                }
                (base == "g" ? triple->g : base == "gamma" ? triple->gamma : triple->gamma_s) = v;
            }
        } else if (key == "cavity.Pz") {
            config.pz_a = config.pz_b = parse_grid(key, value);
        } else if (key == "cavity.Pz_A") {
            config.pz_a = parse_grid(key, value);
        } else if (key == "cavity.Pz_B") {
            config.pz_b = parse_grid(key, value);
        } else if (key == "noise.p_l") {
            config.photon_loss = parse_grid(key, value);
        } else if (key == "noise.p_dc") {
            config.dark_count = parse_grid(key, value);
        } else if (key == "noise.f") {
            config.mismatch = parse_grid(key, value);
        } else if (key == "output.path") {
            config.out = value;
        } else if (key == "output.format") {
            if (value == "csv") {
                config.format = OutputFormat::Csv;
            } else if (value == "json") {
                config.format = OutputFormat::Json;
            } else {
                config_error(key, "expected csv or json, got '" + value + "'");
            }
        } else {
            config_error(key, "unknown key");
        }
    }

    if (config.shared_coupling && (triple_a.any() || triple_b.any())) {
        config.coupling_a = config.coupling_b = {*config.shared_coupling, std::nullopt};
        config.shared_coupling.reset();
    }
    for (auto [triple, set_g, side, name] : {std::tuple{&triple_a, set_g_a, &config.coupling_a, "A"},
                                             std::tuple{&triple_b, set_g_b, &config.coupling_b, "B"}}) {
        if (!triple->any()) {
            continue;
        }
        const std::string field = std::string("cavity.g_") + name;
        if (set_g) {
            config_error(field, "give either G or (g, gamma, gamma_s) for a side, not both");
        }
        if (!triple->g) {
            config_error(field, "gamma/gamma_s given without g");
        }
        try {
            side->cavity = CavityParams(*triple->g, triple->gamma.value_or(1.0), triple->gamma_s.value_or(1.0));
        } catch (const Error &e) {
            config_error(field, e.what());
        }
    }
    if (!config.shared_coupling) {
        // A side with neither G nor a triple keeps its previous grid.
        if (set_g_a) {
            config.coupling_a.cavity.reset();
        }
        if (set_g_b) {
            config.coupling_b.cavity.reset();
        }
    }

    if (alpha || beta) {
        try {
            config.input_a = NodeInput(alpha.value_or(config.input_a.zero()), beta.value_or(config.input_a.one()));
        } catch (const Error &e) {
            config_error("inputs.alpha", e.what());
        }
        config.input_kind = InputKind::Explicit;
    }
    if (a || b) {
        try {
            config.input_b = NodeInput(a.value_or(config.input_b.zero()), b.value_or(config.input_b.one()));
        } catch (const Error &e) {
            config_error("inputs.a", e.what());
        }
        config.input_kind = InputKind::Explicit;
    }
}

Estimates estimate(std::uint64_t trials, const std::vector<double> &accepted_fidelities) {
    Estimates out{{0, 0}, std::nullopt};
    if (trials == 0) {
        return out;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(accepted_fidelities.size()) / n;
    out.acceptance = {p, std::sqrt(p * (1 - p) / n)};
    if (accepted_fidelities.empty()) {
        return out;
    }
    const double k = static_cast<double>(accepted_fidelities.size());
    double sum = 0;
    for (double f : accepted_fidelities) {
        sum += f;
    }
    const double mean = sum / k;
    double ss = 0;
    for (double f : accepted_fidelities) {
        ss += (f - mean) * (f - mean);
    }
    const double stderr_ = accepted_fidelities.size() > 1 ? std::sqrt(ss / (k - 1) / k) : 0.0;
    out.fidelity = Estimate{mean, stderr_};
    return out;
}

std::vector<ResultRow> run_sweep(const SweepConfig &config) {
    config.validate();

    std::vector<std::pair<NodeInput, NodeInput>> inputs;
    if (config.input_kind == InputKind::Random) {
        for (std::size_t k = 0; k < config.random_count; ++k) {
            RngStream rng(config.seed, k, kInputSubstream);
            auto ia = random_input(rng);
            auto ib = random_input(rng);
            inputs.emplace_back(ia, ib);
        }
    } else if (config.input_kind == InputKind::Balanced) {
        inputs.emplace_back(NodeInput::balanced(), NodeInput::balanced());
    } else {
        inputs.emplace_back(config.input_a, config.input_b);
    }

    std::vector<ResultRow> rows;
    std::uint32_t point = 0;
    for (const auto &g : coupling_pairs(config)) {
        for (double pz_a : config.pz_a) {
            for (double pz_b : config.pz_b) {
                for (double p_l : config.photon_loss) {
                    for (double p_dc : config.dark_count) {
                        for (double f : config.mismatch) {
                            const NoiseParams noise{p_l, p_dc, f};
                            std::vector<TrialRunner> runners;
                            for (const auto &[ia, ib] : inputs) {
                                TrialSettings s;
                                s.input_a = ia;
                                s.input_b = ib;
                                s.cavity_a = {g.a, pz_a};
                                s.cavity_b = {g.b, pz_b};
                                s.mode = config.mode;
                                s.scatter = config.scatter;
                                s.noise = noise;
                                s.gates = config.gates;
                                runners.emplace_back(std::move(s));
                            }

                            std::vector<TrialRecord> records(config.trials);
                            auto work = [&](std::uint64_t begin, std::uint64_t end) {
                                for (std::uint64_t t = begin; t < end; ++t) {
                                    RngStream rng(config.seed, t, point);
                                    const auto outcome = runners[t % runners.size()].run(rng);
                                    records[t] = {outcome.status, outcome.fidelity.value_or(0.0)};
                                }
                            };
                            const std::uint64_t workers =
                                std::min<std::uint64_t>(config.workers, config.trials);
                            if (workers <= 1) {
                                work(0, config.trials);
                            } else {
                                std::vector<std::jthread> pool;
                                const std::uint64_t chunk = (config.trials + workers - 1) / workers;
                                for (std::uint64_t w = 0; w < workers; ++w) {
                                    const std::uint64_t begin = w * chunk;
                                    const std::uint64_t end = std::min(config.trials, begin + chunk);
                                    if (begin < end) {
                                        pool.emplace_back(work, begin, end);
                                    }
                                }
                            }

                            ResultRow row{};
                            row.coupling_a = g.a;
                            row.coupling_b = g.b;
                            row.pz_a = pz_a;
                            row.pz_b = pz_b;
                            row.photon_loss = p_l;
                            row.dark_count = p_dc;
                            row.mismatch = f;
                            row.gates = config.gates;
                            row.trials = config.trials;
                            row.seed = config.seed;
                            std::vector<double> fidelities;
                            for (const auto &r : records) {
                                switch (r.status) {
                                    case TrialStatus::Accepted:
                                        ++row.accepted;
                                        fidelities.push_back(r.fidelity);
                                        break;
                                    case TrialStatus::FalsePositive:
                                        ++row.false_positive;
                                        fidelities.push_back(r.fidelity);
                                        break;
                                    case TrialStatus::Discarded:
                                        ++row.discarded;
                                        break;
                                }
                            }
                            const auto est = estimate(config.trials, fidelities);
                            row.acceptance = est.acceptance;
                            row.fidelity = est.fidelity;

                            double analytic = 0;
                            for (const auto &[ia, ib] : inputs) {
                                analytic += nlgate::analytic_fidelity(ia, ib, g.a, g.b, pz_a, pz_b).value;
                            }
                            row.analytic_fidelity = analytic / static_cast<double>(inputs.size());
                            row.analytic_success = guarded([&] { return success_probability(p_l, p_dc, config.gates); });
                            row.analytic_total_factor = guarded(
                                [&] { return total_fidelity_factor(noise, g.a, pz_a, g.b, pz_b, config.gates); });
                            rows.push_back(row);
                            ++point;
                        }
                    }
                }
            }
        }
    }
    return rows;
}

const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> columns = {
        "G_A",      "G_B",         "Pz_A",           "Pz_B",          "p_l",
        "p_dc",     "f",           "N",              "trials",        "accepted",
        "discarded", "false_positive", "acceptance_rate", "acceptance_stderr", "mean_fidelity",
        "fidelity_stderr", "analytic_F", "analytic_success", "analytic_total_factor", "seed",
    };
    return columns;
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

// Field texts in csv_columns() order; nullopt marks an absent value.
std::vector<std::optional<std::string>> row_fields(const ResultRow &r) {
    auto num = [](double v) { return std::optional<std::string>(format_number(v)); };
    auto opt = [](const std::optional<double> &v) {
        return v ? std::optional<std::string>(format_number(*v)) : std::nullopt;
    };
    auto integer = [](std::uint64_t v) { return std::optional<std::string>(std::to_string(v)); };
    return {
        num(r.coupling_a),
        num(r.coupling_b),
        num(r.pz_a),
        num(r.pz_b),
        num(r.photon_loss),
        num(r.dark_count),
        num(r.mismatch),
        integer(static_cast<std::uint64_t>(r.gates)),
        integer(r.trials),
        integer(r.accepted),
        integer(r.discarded),
        integer(r.false_positive),
        num(r.acceptance.mean),
        num(r.acceptance.stderr_),
        r.fidelity ? num(r.fidelity->mean) : std::nullopt,
        r.fidelity ? num(r.fidelity->stderr_) : std::nullopt,
        opt(r.analytic_fidelity),
        opt(r.analytic_success),
        opt(r.analytic_total_factor),
        integer(r.seed),
    };
}

}  // namespace

void write_csv(std::ostream &out, const std::vector<ResultRow> &rows) {
    const auto &columns = csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        const auto fields = row_fields(row);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? "," : "") << fields[i].value_or("");
        }
        out << '\n';
    }
}

void write_json(std::ostream &out, const std::vector<ResultRow> &rows) {
    const auto &columns = csv_columns();
    out << "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto fields = row_fields(rows[r]);
        out << (r ? ",\n " : "\n ") << "{";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i ? ", " : "") << '"' << columns[i] << "\": " << fields[i].value_or("null");
        }
        out << "}";
    }
    out << (rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace nlgate
