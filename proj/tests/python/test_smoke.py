# Copyright 2026 The nlgate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
import subprocess

import numpy as np
import pytest

import nlgate

S = math.sqrt(0.5)


def test_correction_table():
    table = nlgate.correction_table()
    assert len(table) == 4
    assert table[("v", "h")] == ("Z", "X")
    assert table[("h", "v")] == ("I", "I")


def test_closed_forms():
    assert nlgate.analytic_fidelity(S, S, S, S, 100, 100) == pytest.approx(1 - 800 / 160801, abs=1e-15)
    assert nlgate.ideal_reflection(1, 100) == pytest.approx(399 / 401, abs=1e-15)
    assert nlgate.mismatch_factor(0.05, 100) == pytest.approx(0.9016, abs=5e-4)
    assert nlgate.success_probability(0.1, 0.01) == pytest.approx(0.792, abs=1e-15)
    assert nlgate.reflection_coefficient(0, 0, 10, 1, 1) == -1


def test_run_ideal_returns_cnot_states():
    branches = nlgate.run_ideal(0.6, 0.8j, S, -S)
    assert len(branches) == 4
    for b in branches:
        assert b["probability"] == pytest.approx(0.25, abs=1e-12)
        assert b["fidelity"] == pytest.approx(1, abs=1e-12)
        rho = np.asarray(b["state"])
        assert rho.shape == (4, 4)
        assert np.trace(rho).real == pytest.approx(1, abs=1e-12)


def test_sweep_rows_and_determinism():
    config = {"run.trials": "500", "run.seed": "11", "cavity.G": "10,100", "noise.p_l": "0.1", "noise.p_dc": "0.01"}
    rows = nlgate.run_sweep(config)
    assert [r["G_A"] for r in rows] == [10, 100]
    for r in rows:
        assert r["accepted"] + r["discarded"] + r["false_positive"] == 500
    serial = nlgate.sweep_csv(config)
    parallel = nlgate.sweep_csv({**config, "run.workers": "3"})
    assert serial == parallel
    assert serial.splitlines()[0].split(",") == nlgate.csv_columns()


def test_errors_carry_codes():
    with pytest.raises(nlgate.NlgateError) as info:
        nlgate.run_sweep({"noise.p_l": "2"})
    assert info.value.code == "ConfigError"
    with pytest.raises(nlgate.NlgateError):
        nlgate.analytic_fidelity(1, 1, 1, 0, 10, 10)


CLI = os.environ.get("NLGATE_CLI")


@pytest.mark.skipif(not CLI, reason="NLGATE_CLI not set")
def test_cli_round_trip():
    out = subprocess.run([CLI, "simulate", "--G", "100", "--trials", "200", "--format", "json"],
                         capture_output=True, text=True, check=True)
    rows = json.loads(out.stdout)
    assert rows[0]["trials"] == 200
    bad = subprocess.run([CLI, "simulate", "--pl", "2"], capture_output=True, text=True)
    assert bad.returncode == 2
    err = json.loads(bad.stderr)
    assert err["error"] == "ConfigError"
    spectrum = subprocess.run([CLI, "spectrum", "--Pz", "0", "--gamma", "1", "--points", "5"],
                              capture_output=True, text=True, check=True)
    lines = spectrum.stdout.strip().splitlines()
    assert len(lines) == 6
    for line in lines[1:]:
        assert float(line.split(",")[3]) == pytest.approx(1, abs=1e-15)
