# Copyright 2026 The cvsteer Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Steady-state steering and entanglement of linear three-mode optomechanics."""

from ._core import (  # noqa: F401
    CovarianceMatrix,
    EnsembleEstimate,
    Error,
    LinearModel,
    NumericalError,
    SimulationConfig,
    StabilityError,
    StabilityInfo,
    SystemParams,
    UnsupportedError,
    ValidationError,
    __version__,
    adiabatic_regime_warning,
    analytic,
    build_model,
    entanglement,
    figure_csv,
    figure_ids,
    reid_steering,
    residual,
    simulate,
    stability,
    steady_state,
    steady_state_report,
    sweep_csv,
    symplectic_eigenvalues,
    validate_report,
)


def params(**kwargs):
    """SystemParams from keyword arguments; accepts C_a, G and G_a too."""
    p = SystemParams()
    derived = {k: kwargs.pop(k) for k in ("C_a", "G", "G_a") if k in kwargs}
    for key, value in kwargs.items():
        p.set(key, value)
    for key, value in derived.items():
        p.set(key, value)
    p.validate()
    return p
