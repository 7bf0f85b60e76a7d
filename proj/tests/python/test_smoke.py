# Copyright 2026 The qknn-lab Authors
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

import pytest

import qknn_lab


def test_swap_test():
    assert qknn_lab.swap_test_p0([1, 0], [1, 0]) == pytest.approx(1.0, abs=1e-12)
    assert qknn_lab.swap_test_p0([1, 0], [0, 1]) == pytest.approx(0.5, abs=1e-12)
    assert qknn_lab.swap_test_p0([1, 1], [1, 0]) == pytest.approx(0.75, abs=1e-12)
    fidelity, clamped = qknn_lab.fidelity_from_p0(0.75)
    assert fidelity == pytest.approx(1 / math.sqrt(2))
    assert not clamped
    assert qknn_lab.quantum_euclidean_distance(0.5) == pytest.approx(1.0)


def test_grover():
    probs, sampled = qknn_lab.grover_search(2, 3)
    assert probs[3] == pytest.approx(1.0, abs=1e-12)
    assert sampled == 3
    probs, _ = qknn_lab.grover_search(3, 5, iterations=2)
    assert probs[5] == pytest.approx(0.9453, abs=1e-3)


def test_classical():
    assert qknn_lab.hamming_distance("00101", "10111") == 2
    assert qknn_lab.euclidean_distance([0, 0], [3, 4]) == 5.0
    assert qknn_lab.knn_predict([[0.0], [1.0], [5.0]], [0, 0, 1], [0.2], 1) == 0
    assert qknn_lab.suggest_k(100) == 11


def test_qknn():
    r = qknn_lab.qknn_classify(["00", "11"], [0, 1], "00", threshold=1)
    assert r["predicted"] == 0
    assert r["acceptance_probability"] == pytest.approx(0.5)
    tie = qknn_lab.qknn_classify(["01", "10"], [0, 1], "11", threshold=2)
    assert tie["class_distribution"] == pytest.approx([0.5, 0.5])
    assert tie["predicted"] == 0
    assert qknn_lab.calibrate_threshold(["000", "100", "110", "111"], [0, 1, 0, 1], "000", 2) == 2
    with pytest.raises(qknn_lab.NoNeighborError):
        qknn_lab.qknn_classify(["00"], [0], "11", threshold=1, fallback=False)
    with pytest.raises(ValueError):
        qknn_lab.qknn_classify(["00"], [0], "111")


def test_cli_round_trip():
    code, out, err = qknn_lab.run_cli(["grover", "--qubits", "2", "--marked", "11", "--no-timing"])
    assert code == 0, err
    assert json.loads(out)["probabilities"][3] == pytest.approx(1.0)
    code, _, err = qknn_lab.run_cli(["knn", "--k", "0"])
    assert code == 2
    assert err.startswith("error: code=usage")
