# Copyright 2026 The liouvep authors
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

import liouvep


def test_version_string():
    major, minor, patch = liouvep.__version__.split(".")
    assert all(part.isdigit() for part in (major, minor, patch))


def test_liouvillian_preserves_trace():
    L = liouvep.liouvillian(channel="dephasing", gamma=1.0, c=0.3, j=0.25)
    assert L.shape == (16, 16)
    tr = np.eye(4, dtype=complex).reshape(-1, order="F")
    assert np.linalg.norm(tr @ L) < 1e-12 * max(1.0, np.linalg.norm(L))


def test_closed_form_pair_in_spectrum():
    rep = liouvep.spectrum(channel="dephasing", gamma=1.0, c=0.3, j=0.25)
    lam1, lam2 = liouvep.dephasing_eigs(1.0, 0.3, 0.25)
    eigs = np.asarray(rep["eigenvalues"]).ravel()
    for lam in (lam1, lam2):
        assert np.min(np.abs(eigs - lam)) < 1e-8
    assert rep["ep_strength"] >= 1.0
    assert rep["max_residual"] < 1e-10


def test_conditioning_diverges_at_the_coalescence():
    loc = liouvep.ep_condition_dephasing(1.0, 0.25)
    assert loc["in_range"]
    at = liouvep.spectrum(channel="dephasing", c=loc["c_crit"], j=0.25)
    away = liouvep.spectrum(channel="dephasing", c=0.0, j=0.25)
    assert at["ep_strength"] > 100.0 * away["ep_strength"]


def test_defectiveness_on_jordan_block():
    m = np.array([[2.0, 1.0], [0.0, 2.0]], dtype=complex)
    rep = liouvep.defectiveness(m, 2.0 + 0.0j)
    assert rep["delta1"] == 1
    assert rep["delta2"] == 2
    assert rep["defective"]


def test_reduced_blocks():
    a = liouvep.reduced_dephasing(1.0, 0.3, 0.25)
    assert np.allclose(a, [[-1.4, -0.5], [0.5, 0.0]])
    rep = liouvep.validate_reduction("dephasing", gamma=1.0, c=0.3, j=0.25)
    assert rep["closure_ok"]
    assert rep["max_entry_deviation"] < 1e-10
    # the relaxation candidate block does not close; the report says so
    rep = liouvep.validate_reduction("relaxation", gamma=1.0, c=0.4, delta=0.2)
    assert not rep["closure_ok"]
    assert rep["leakage"] > 1e-3


def test_scan_is_deterministic_across_workers():
    kw = dict(channel="dephasing", j=0.25, gamma=1.0)
    one = liouvep.scan_1d("c", 0.0, 0.8, 9, jobs=1, **kw)
    four = liouvep.scan_1d("c", 0.0, 0.8, 9, jobs=4, **kw)
    assert one["csv"] == four["csv"]
    assert len(one["grid"]) == 9
    assert all(np.isfinite(one["ep_strength"]))


def test_custom_adjacency_and_errors():
    adj = np.array([[0.0, 1.0], [1.0, 0.0]])
    L = liouvep.liouvillian(model="custom", adjacency=adj, c=0.4)
    assert L.shape == (16, 16)
    with pytest.raises(ValueError):
        liouvep.liouvillian(channel="dephasing", c=1.5)  # outside the admissible range
    with pytest.raises(ValueError):
        liouvep.liouvillian(model="cycle", n_sites=9)
