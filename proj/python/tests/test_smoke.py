# Copyright 2026 The chancmp Authors
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
import pathlib

import numpy as np
import pytest

import chancmp

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def bsc(p):
    return np.array([[1 - p, p], [p, 1 - p]])


def bec(e):
    return np.array([[1 - e, 0], [e, e], [0, 1 - e]])


def test_entropy_basics():
    assert chancmp.shannon_entropy(np.array([0.25, 0.75])) == pytest.approx(0.811278, abs=1e-6)
    joint = np.eye(3) / 3
    assert chancmp.conditional_min_entropy(joint) == pytest.approx(0.0, abs=1e-12)
    assert chancmp.mutual_information(joint) == pytest.approx(math.log2(3))


def test_erasure_degrades_to_symmetric():
    r = chancmp.compare_channels(bec(0.3), bsc(0.15))
    assert r["verdict"] == "Degradable"
    assert r["residual"] <= 1e-9
    np.testing.assert_allclose(r["phi"] @ bec(0.3), bsc(0.15), atol=1e-9)


def test_noisy_is_not_degradable_to_identity():
    r = chancmp.compare_channels(bsc(0.15), np.eye(2))
    assert r["verdict"] == "NotDegradable"
    assert r["gap"] == pytest.approx(0.15, abs=1e-9)
    gap, p_star = chancmp.extract_violation_witness(bsc(0.15), np.eye(2))
    assert p_star is not None and p_star.sum() == pytest.approx(1.0)


def test_minimax_and_separation():
    r = chancmp.bilinear_minimax(np.array([[2.0, 0.0], [0.0, 1.0]]))
    assert r["maximin"] == pytest.approx(2 / 3, abs=1e-9)
    assert r["minimax"] == pytest.approx(2 / 3, abs=1e-9)
    s = chancmp.separate_point(np.array([[0.0, 0.0], [1.0, 0.0]]), np.array([2.0, 0.5]))
    assert s["verdict"] == "Separated"
    assert s["vertex_margin"] > 0 and s["point_margin"] > 0


def test_helstrom_example():
    zero = np.array([[1, 0], [0, 0]], dtype=complex)
    plus = np.full((2, 2), 0.5, dtype=complex)
    assert chancmp.helstrom(0.5, zero, plus) == pytest.approx(0.853553, abs=1e-6)
    lo, hi = chancmp.pguess_bracket(np.array([0.5, 0.5]), [zero, plus])
    assert lo == pytest.approx(hi, abs=1e-9)


def test_depolarizing_order():
    a = chancmp.depolarizing_choi(2, 0.8)
    b = chancmp.depolarizing_choi(2, 0.4)
    assert chancmp.compare_quantum(a, 2, 2, b, 2)["verdict"] == "Degradable"
    r = chancmp.compare_quantum(b, 2, 2, a, 2)
    assert r["verdict"] == "NotDegradable"
    assert r["gap"] >= 1e-3


def test_memory_demo():
    r = chancmp.run_demo("memory-classical")
    assert r["verdict"] == "MemoryWitnessed"
    assert r["stage"] == 3
    assert chancmp.run_demo("markov-classical", seed=4)["verdict"] == "ConsistentWithMemoryless"


def test_documents():
    doc = chancmp.load_document(DATA / "bec_0.3.json")
    assert doc["kind"] == "classical-channel"
    assert chancmp.parse_document(json.dumps(doc)) == doc
    with pytest.raises(chancmp.DocumentError):
        chancmp.parse_document('{"kind": "ensemble"}')
