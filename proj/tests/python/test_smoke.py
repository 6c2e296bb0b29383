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
import numpy as np
import pytest

import cvsteer


def test_vacuum_covariance():
    p = cvsteer.params(C_a=0.0, g_m=0.0)
    v = cvsteer.steady_state(cvsteer.build_model("reduced_a", p))
    assert v.modes == ["a", "b"]
    np.testing.assert_allclose(v.values, 0.5 * np.eye(4), atol=1e-14)
    np.testing.assert_allclose(v.symplectic_eigenvalues(), [0.5, 0.5], atol=1e-14)


def test_steering_matches_closed_form():
    p = cvsteer.params(C_a=1.0, g_m=0.5)
    v = cvsteer.steady_state(cvsteer.build_model("reduced_a", p))
    report = cvsteer.reid_steering(v, "a", "b")
    e_ab, e_ba = cvsteer.analytic.steering_case1(p)
    assert report["e_ij"] == pytest.approx(e_ab, rel=1e-10)
    assert report["e_ji"] == pytest.approx(e_ba, rel=1e-10)
    assert report["classification"] == "one_way_i_by_j"


def test_entanglement_without_steering():
    p = cvsteer.params(C_a=0.0, g_m=0.5)
    v = cvsteer.steady_state(cvsteer.build_model("reduced_a", p))
    ent = cvsteer.entanglement(v, "a", "b")
    steer = cvsteer.reid_steering(v, "a", "b")
    assert ent["duan_simon"] < 1.0
    assert ent["lambda"] < 0.5
    assert steer["e_ij"] == pytest.approx(0.5, abs=1e-12)


def test_instability_raises():
    p = cvsteer.params(g_m=1.5)
    with pytest.raises(cvsteer.StabilityError):
        cvsteer.steady_state(cvsteer.build_model("reduced_a", p))


def test_bad_parameter_raises():
    with pytest.raises(cvsteer.ValidationError):
        cvsteer.params(kappa=-1.0)


def test_report_and_sweep():
    doc = cvsteer.steady_state_report("reduced_b", cvsteer.params(G=0.25, G_a=2.0))
    assert doc["modes"] == ["b", "c"]
    assert doc["stability"]["stable"]
    csv = cvsteer.sweep_csv("reduced_a", "C_a", 0.5, 2.0, 4, ["E_ab"], cvsteer.params(g_m=1.0))
    lines = [line for line in csv.splitlines() if not line.startswith("#")]
    assert lines[0] == "C_a,stable,E_ab,E_ab_analytic,E_ab_absdiff"
    assert len(lines) == 5


def test_simulation_is_reproducible():
    model = cvsteer.build_model("reduced_a", cvsteer.params(C_a=1.0, g_m=0.5))
    cfg = cvsteer.SimulationConfig()
    cfg.n_trajectories = 4
    cfg.sample_duration = 20.0
    first = cvsteer.simulate(model, cfg).covariance.values
    second = cvsteer.simulate(model, cfg).covariance.values
    assert np.array_equal(first, second)
