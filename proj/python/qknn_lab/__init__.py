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
"""Python bindings for the qknn-lab simulator and classifiers."""

from ._core import (
    DataError,
    DomainError,
    NoNeighborError,
    __version__,
    calibrate_threshold,
    euclidean_distance,
    fidelity_from_p0,
    grover_search,
    hamming_distance,
    knn_predict,
    optimal_iterations,
    qknn_classify,
    quantum_euclidean_distance,
    run_cli,
    suggest_k,
    swap_test_p0,
)

__all__ = [
    "DataError",
    "DomainError",
    "NoNeighborError",
    "__version__",
    "calibrate_threshold",
    "euclidean_distance",
    "fidelity_from_p0",
    "grover_search",
    "hamming_distance",
    "knn_predict",
    "optimal_iterations",
    "qknn_classify",
    "quantum_euclidean_distance",
    "run_cli",
    "suggest_k",
    "swap_test_p0",
]
