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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlgate/cavity.hpp"
#include "nlgate/error.hpp"
#include "nlgate/harness.hpp"
#include "nlgate/noise.hpp"
#include "nlgate/protocol.hpp"

namespace py = pybind11;
using namespace nlgate;

namespace {

SpectralForm parse_form(const std::string &form) {
    if (form == "single") {
        return SpectralForm::SingleExcitation;
    }
    if (form == "printed") {
        return SpectralForm::AsPrinted;
    }
    throw Error(ErrorCode::InvalidMode, "unknown spectral form '" + form + "' (single|printed)");
}

py::object optional_value(const std::optional<double> &v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict row_dict(const ResultRow &r) {
    py::dict d;
    d["G_A"] = r.coupling_a;
    d["G_B"] = r.coupling_b;
    d["Pz_A"] = r.pz_a;
    d["Pz_B"] = r.pz_b;
    d["p_l"] = r.photon_loss;
    d["p_dc"] = r.dark_count;
    d["f"] = r.mismatch;
    d["N"] = r.gates;
    d["trials"] = r.trials;
    d["accepted"] = r.accepted;
    d["discarded"] = r.discarded;
    d["false_positive"] = r.false_positive;
    d["acceptance_rate"] = r.acceptance.mean;
    d["acceptance_stderr"] = r.acceptance.stderr_;
    d["mean_fidelity"] = r.fidelity ? py::object(py::float_(r.fidelity->mean)) : py::object(py::none());
    d["fidelity_stderr"] = r.fidelity ? py::object(py::float_(r.fidelity->stderr_)) : py::object(py::none());
    d["analytic_F"] = optional_value(r.analytic_fidelity);
    d["analytic_success"] = optional_value(r.analytic_success);
    d["analytic_total_factor"] = optional_value(r.analytic_total_factor);
    d["seed"] = r.seed;
    return d;
}

SweepConfig config_from(const ConfigValues &values) {
    SweepConfig config;
    apply_config(config, values);
    config.validate();
    return config;
}

}  // namespace

PYBIND11_MODULE(_nlgate, m) {
    m.doc() = "Nonlocal CNOT gate via cavity-assisted photon scattering";

    static py::exception<Error> error_type(m, "NlgateError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.code())) + ": " + e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.def(
        "reflection_coefficient",
        [](double omega, double pz, double g, double gamma, double gamma_s, const std::string &form) {
            return reflection_coefficient(omega, pz, CavityParams(g, gamma, gamma_s), parse_form(form));
        },
        py::arg("omega"), py::arg("pz"), py::arg("g"), py::arg("gamma"), py::arg("gamma_s"),
        py::arg("form") = "single");
    m.def(
        "ideal_reflection", [](double pz, double g) { return ideal_reflection(pz, g); }, py::arg("pz"),
        py::arg("G"));
    m.def(
        "coherence_survival", [](double g, double pz) { return coherence_survival(g, pz); }, py::arg("G"),
        py::arg("pz") = 1.0);
    m.def(
        "resonant_reflectance", [](double g, double pz) { return resonant_reflectance(g, pz); }, py::arg("G"),
        py::arg("pz") = 1.0);
    m.def(
        "delta", [](double g, double pz) { return delta(g, pz); }, py::arg("G"), py::arg("pz") = 1.0);
    m.def(
        "analytic_fidelity",
        [](Complex alpha, Complex beta, Complex a, Complex b, double ga, double gb, double pza, double pzb) {
            return analytic_fidelity(NodeInput(alpha, beta), NodeInput(a, b), ga, gb, pza, pzb).value;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("G_A"), py::arg("G_B"),
        py::arg("Pz_A") = 1.0, py::arg("Pz_B") = 1.0);
    m.def("shrinking_factor", &shrinking_factor, py::arg("p_l"), py::arg("p_dc"), py::arg("N") = 1);
    m.def(
        "mismatch_factor", [](double f, double g, double pz, int n) { return mismatch_factor(f, g, pz, n); },
        py::arg("f"), py::arg("G"), py::arg("pz") = 1.0, py::arg("N") = 1);
    m.def("success_probability", &success_probability, py::arg("p_l"), py::arg("p_dc"), py::arg("N") = 1);
    m.def("exact_success_probability", &exact_success_probability, py::arg("p_l"), py::arg("p_dc"),
          py::arg("N") = 1);
    m.def(
        "total_fidelity_factor",
        [](double p_l, double p_dc, double f, double g, double pz, int n) {
            return total_fidelity_factor(NoiseParams{p_l, p_dc, f}, g, pz, n);
        },
        py::arg("p_l"), py::arg("p_dc"), py::arg("f"), py::arg("G"), py::arg("pz") = 1.0, py::arg("N") = 1);

    m.def("correction_table", [] {
        py::dict out;
        for (const auto &r : CorrectionTable::records()) {
            const auto &c = correction_table().at(r);
            out[py::make_tuple(std::string(to_string(r.r_a)), std::string(to_string(r.r_b)))] =
                py::make_tuple(std::string(to_string(c.on_a)), std::string(to_string(c.on_b)));
        }
        return out;
    });
    m.def(
        "run_ideal",
        [](Complex alpha, Complex beta, Complex a, Complex b) {
            py::list out;
            for (const auto &r : run_ideal(NodeInput(alpha, beta), NodeInput(a, b))) {
                py::dict d;
                d["record"] = py::make_tuple(std::string(to_string(r.record.r_a)), std::string(to_string(r.record.r_b)));
                d["probability"] = r.probability;
                d["fidelity"] = r.fidelity;
                d["state"] = Matrix(r.state_ab.matrix());
                out.append(d);
            }
            return out;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("b"));
    m.def(
        "run_sweep",
        [](const ConfigValues &values) {
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(config_from(values));
            }
            py::list out;
            for (const auto &r : rows) {
                out.append(row_dict(r));
            }
            return out;
        },
        py::arg("config") = ConfigValues{},
        "Runs a sweep. Keys follow the config file: 'run.seed', 'cavity.G', 'noise.p_l', ...");
    m.def(
        "sweep_csv",
        [](const ConfigValues &values) {
            std::vector<ResultRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(config_from(values));
            }
            std::ostringstream os;
            write_csv(os, rows);
            return os.str();
        },
        py::arg("config") = ConfigValues{});
    m.def("csv_columns", &csv_columns);
}
