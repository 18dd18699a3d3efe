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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "nlgate/error.hpp"

using namespace nlgate;

namespace {

// numpy enumeration (tests/oracle/protocol_oracle.py), balanced, G = 100.
constexpr double kExactFidelity100 = 1 - 0.0037344295122546667;

std::string csv_of(const std::vector<ResultRow> &rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

std::string config_error_message(SweepConfig &config, const ConfigValues &values) {
    try {
        apply_config(config, values);
        config.validate();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ConfigError);
        return e.what();
    }
    return "";
}

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST(parse, grids_and_complex) {
    EXPECT_EQ(parse_grid("x", "10, 100,1000"), (std::vector<double>{10, 100, 1000}));
    EXPECT_EQ(parse_complex("x", "0.6,-0.8"), std::complex<double>(0.6, -0.8));
    EXPECT_EQ(parse_complex("x", "0.5"), std::complex<double>(0.5, 0));
    EXPECT_THROW(parse_grid("x", "1,,2"), Error);
    EXPECT_THROW(parse_grid("x", "abc"), Error);
    EXPECT_THROW(parse_complex("x", "1,2,3"), Error);
}

TEST(config, defaults_are_valid) {
    SweepConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.grid_size(), 1u);
}

TEST(config, applies_every_section) {
    SweepConfig c;
    apply_config(c, {{"run.seed", "18446744073709551615"},
                     {"run.trials", "250"},
                     {"run.workers", "3"},
                     {"run.N", "2"},
                     {"run.mode", "ideal"},
                     {"run.scatter", "loss"},
                     {"cavity.G", "10,100"},
                     {"cavity.Pz", "0.5,1"},
                     {"noise.p_l", "0,0.1"},
                     {"noise.p_dc", "0.01"},
                     {"noise.f", "0.05"},
                     {"output.format", "json"},
                     {"output.path", "out.json"}});
    EXPECT_EQ(c.seed, 18446744073709551615ull);
    EXPECT_EQ(c.trials, 250u);
    EXPECT_EQ(c.workers, 3u);
    EXPECT_EQ(c.gates, 2);
    EXPECT_EQ(c.mode, CpfMode::Ideal);
    EXPECT_EQ(c.scatter, ScatterModel::Loss);
    EXPECT_EQ(c.format, OutputFormat::Json);
    EXPECT_EQ(c.out, "out.json");
    EXPECT_EQ(c.grid_size(), 2u * 2 * 2 * 2);
}

TEST(config, per_side_coupling) {
    SweepConfig c;
    apply_config(c, {{"cavity.G", "10,100"}, {"cavity.G_B", "1000"}});
    EXPECT_FALSE(c.shared_coupling);
    EXPECT_EQ(c.coupling_a.grid(), (std::vector<double>{10, 100}));
    EXPECT_EQ(c.coupling_b.grid(), (std::vector<double>{1000}));
    EXPECT_EQ(c.grid_size(), 2u);

    SweepConfig t;
    apply_config(t, {{"cavity.g_A", "10"}, {"cavity.gamma_A", "1"}, {"cavity.gamma_s_A", "1"}});
    ASSERT_TRUE(t.coupling_a.cavity);
    EXPECT_DOUBLE_EQ(t.coupling_a.grid()[0], 100);
    EXPECT_FALSE(t.coupling_b.cavity);
}

TEST(config, explicit_amplitudes) {
    SweepConfig c;
    apply_config(c, {{"inputs.alpha", "0.6,0"}, {"inputs.beta", "0,0.8"}});
    EXPECT_EQ(c.input_kind, InputKind::Explicit);
    EXPECT_EQ(c.input_a.one(), std::complex<double>(0, 0.8));
}

TEST(config, field_level_errors) {
    const std::vector<std::pair<ConfigValues, std::string>> cases = {
        {{{"noise.p_l", "1.5"}}, "noise.p_l"},
        {{{"noise.p_dc", "-0.1"}}, "noise.p_dc"},
        {{{"run.trials", "0"}}, "run.trials"},
        {{{"run.trials", "ten"}}, "run.trials"},
        {{{"run.seed", "-1"}}, "run.seed"},
        {{{"run.mode", "fast"}}, "run.mode"},
        {{{"cavity.G", "-1"}}, "cavity.G"},
        {{{"cavity.G", ""}}, "cavity.G"},
        {{{"inputs.alpha", "1"}, {"inputs.beta", "1"}}, "inputs.alpha"},
        {{{"cavity.G_A", "10"}, {"cavity.g_A", "1"}}, "cavity.g_A"},
        {{{"cavity.gamma_B", "1"}}, "cavity.g_B"},
        {{{"bogus.key", "1"}}, "bogus.key"},
    };
    for (const auto &[values, field] : cases) {
        SweepConfig c;
        const auto msg = config_error_message(c, values);
        EXPECT_EQ(msg.rfind(field + ":", 0), 0u) << msg;
    }
}

TEST(config, reads_ini_file) {
    const auto path = std::filesystem::temp_directory_path() / "nlgate_harness_test.ini";
    {
        std::ofstream f(path);
        f << "[run]\nseed = 7\ntrials = 20\n\n[cavity]\nG = 10, 100\n\n[noise]\np_l = 0.1\n";
    }
    const auto values = read_config_file(path.string());
    EXPECT_EQ(values.at("run.seed"), "7");
    EXPECT_EQ(values.at("cavity.G"), "10, 100");
    SweepConfig c;
    apply_config(c, values);
    EXPECT_EQ(c.grid_size(), 2u);
    std::filesystem::remove(path);
    EXPECT_THROW(read_config_file("/nonexistent/nlgate.ini"), Error);
}

TEST(estimate, all_ones) {
    const auto e = estimate(5, {1, 1, 1, 1, 1});
    EXPECT_EQ(e.acceptance.mean, 1);
    EXPECT_EQ(e.acceptance.stderr_, 0);
    ASSERT_TRUE(e.fidelity);
    EXPECT_EQ(e.fidelity->mean, 1);
    EXPECT_EQ(e.fidelity->stderr_, 0);
}

TEST(estimate, binomial_stderr) {
    const auto e = estimate(10000, std::vector<double>(5000, 1.0));
    EXPECT_DOUBLE_EQ(e.acceptance.mean, 0.5);
    EXPECT_NEAR(e.acceptance.stderr_, 0.005, 1e-15);
}

TEST(estimate, empty_accepted_set) {
    const auto e = estimate(100, {});
    EXPECT_EQ(e.acceptance.mean, 0);
    EXPECT_FALSE(e.fidelity);
}

TEST(estimate, sample_stderr) {
    const auto e = estimate(4, {0.9, 1.0});
    EXPECT_DOUBLE_EQ(e.fidelity->mean, 0.95);
    EXPECT_NEAR(e.fidelity->stderr_, 0.05, 1e-15);
}

TEST(run_sweep, ideal_zero_noise) {
    SweepConfig c;
    c.mode = CpfMode::Ideal;
    c.trials = 100;
    const auto rows = run_sweep(c);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].acceptance.mean, 1.0);
    EXPECT_EQ(rows[0].accepted, 100u);
    EXPECT_NEAR(rows[0].fidelity->mean, 1.0, 1e-12);
}

TEST(run_sweep, counts_sum_and_grid_order) {
    SweepConfig c;
    apply_config(c, {{"cavity.G", "10,100"}, {"noise.p_l", "0,0.2"}, {"noise.p_dc", "0.01,0.02"}});
    c.trials = 300;
    const auto rows = run_sweep(c);
    ASSERT_EQ(rows.size(), c.grid_size());
    for (const auto &r : rows) {
        EXPECT_EQ(r.accepted + r.discarded + r.false_positive, r.trials);
    }
    EXPECT_EQ(rows[0].coupling_a, 10);
    EXPECT_EQ(rows[1].dark_count, 0.02);
    EXPECT_EQ(rows[2].photon_loss, 0.2);
    EXPECT_EQ(rows[4].coupling_a, 100);
    // Zero loss leaves no room for false positives.
    EXPECT_EQ(rows[0].false_positive, 0u);
}

TEST(run_sweep, deterministic_across_workers) {
    SweepConfig c;
    apply_config(c, {{"cavity.G", "10,100"}, {"noise.p_l", "0.1"}, {"noise.p_dc", "0.01"}, {"noise.f", "0.05"}});
    c.trials = 2000;
    c.seed = 42;
    const auto serial = csv_of(run_sweep(c));
    for (unsigned w : {2u, 3u, 8u}) {
        c.workers = w;
        EXPECT_EQ(csv_of(run_sweep(c)), serial);
    }
    c.seed = 43;
    EXPECT_NE(csv_of(run_sweep(c)), serial);
}

TEST(run_sweep, random_inputs_reproducible) {
    SweepConfig c;
    c.input_kind = InputKind::Random;
    c.random_count = 7;
    c.mode = CpfMode::Ideal;
    c.trials = 50;
    const auto rows = run_sweep(c);
    EXPECT_NEAR(rows[0].fidelity->mean, 1, 1e-12);
    EXPECT_EQ(csv_of(rows), csv_of(run_sweep(c)));
}

TEST(run_sweep, headline_point) {
    SweepConfig c;
    c.trials = 20000;
    c.workers = 4;
    const auto row = run_sweep(c).at(0);
    EXPECT_NEAR(*row.analytic_fidelity, 1 - 800.0 / 160801.0, 1e-15);
    ASSERT_TRUE(row.fidelity);
    EXPECT_GE(row.fidelity->mean, 0.99);
    EXPECT_NEAR(row.fidelity->mean, kExactFidelity100, 3 * row.fidelity->stderr_ + 1e-12);
}

TEST(run_sweep, infidelity_falls_with_coupling) {
    SweepConfig c;
    apply_config(c, {{"cavity.G", "10,100"}});
    c.trials = 20000;
    c.workers = 4;
    const auto rows = run_sweep(c);
    const double ratio = (1 - rows[0].fidelity->mean) / (1 - rows[1].fidelity->mean);
    EXPECT_GT(ratio, 7.5);
    EXPECT_LT(ratio, 12.5);
}

TEST(run_sweep, analytic_columns_absent_out_of_regime) {
    SweepConfig c;
    c.photon_loss = {0.9};
    c.dark_count = {0.6};
    c.trials = 10;
    const auto row = run_sweep(c).at(0);
    EXPECT_FALSE(row.analytic_success);
    EXPECT_TRUE(row.analytic_fidelity);
}

TEST(output, csv_layout) {
    SweepConfig c;
    apply_config(c, {{"cavity.G", "10,100,1000"}, {"noise.p_l", "0.1,0.2"}});
    c.trials = 20;
    const auto lines = split_lines(csv_of(run_sweep(c)));
    ASSERT_EQ(lines.size(), 1u + 6);
    EXPECT_EQ(lines[0],
              "G_A,G_B,Pz_A,Pz_B,p_l,p_dc,f,N,trials,accepted,discarded,false_positive,acceptance_rate,"
              "acceptance_stderr,mean_fidelity,fidelity_stderr,analytic_F,analytic_success,analytic_total_factor,seed");
    for (const auto &line : lines) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 19);
        EXPECT_EQ(line.find("nan"), std::string::npos);
    }
    EXPECT_EQ(lines[1].rfind("10,10,1,1,0.10000000000000001,0,0,1,20,", 0), 0u) << lines[1];
}

TEST(output, empty_marker_and_json_null) {
    ResultRow r{};
    r.coupling_a = r.coupling_b = 100;
    r.trials = 3;
    r.discarded = 3;
    r.seed = 1;
    std::ostringstream csv;
    write_csv(csv, {r});
    const auto lines = split_lines(csv.str());
    EXPECT_EQ(lines[1], "100,100,0,0,0,0,0,0,3,0,3,0,0,0,,,,,,1");
    std::ostringstream json;
    write_json(json, {r});
    EXPECT_NE(json.str().find("\"mean_fidelity\": null"), std::string::npos);
    EXPECT_NE(json.str().find("\"G_A\": 100"), std::string::npos);
}

TEST(output, number_format_round_trips) {
    for (double v : {0.1, 1.0 / 3, 0.99502487562189057, 1e-300, 123456789.0}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
    EXPECT_EQ(format_number(0.5), "0.5");
}
