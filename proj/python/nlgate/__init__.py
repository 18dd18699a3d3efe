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

"""Nonlocal CNOT gate via cavity-assisted photon scattering."""

from ._nlgate import (
    NlgateError,
    analytic_fidelity,
    coherence_survival,
    correction_table,
    csv_columns,
    delta,
    exact_success_probability,
    ideal_reflection,
    mismatch_factor,
    reflection_coefficient,
    resonant_reflectance,
    run_ideal,
    run_sweep,
    shrinking_factor,
    success_probability,
    sweep_csv,
    total_fidelity_factor,
)

__version__ = "0.1.0"

__all__ = [
    "NlgateError",
    "analytic_fidelity",
    "coherence_survival",
    "correction_table",
    "csv_columns",
    "delta",
    "exact_success_probability",
    "ideal_reflection",
    "mismatch_factor",
    "reflection_coefficient",
    "resonant_reflectance",
    "run_ideal",
    "run_sweep",
    "shrinking_factor",
    "success_probability",
    "sweep_csv",
    "total_fidelity_factor",
]
