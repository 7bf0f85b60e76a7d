#!/usr/bin/env python3
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
"""Writes data/wdbc.csv in UCI WDBC column order from scikit-learn's bundled copy.

scikit-learn stores the 569 rows without patient IDs and with target 0 =
malignant, 1 = benign. Row numbers stand in for the IDs.
"""

import csv
import pathlib
import sys

import sklearn

FEATURES = [
    "radius", "texture", "perimeter", "area", "smoothness", "compactness",
    "concavity", "concave_points", "symmetry", "fractal_dimension",
]


def main() -> int:
    src = pathlib.Path(sklearn.__file__).parent / "datasets" / "data" / "breast_cancer.csv"
    dst = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else (
        pathlib.Path(__file__).resolve().parent.parent / "data" / "wdbc.csv")
    header = ["id", "diagnosis"]
    for suffix in ("mean", "se", "worst"):
        header += [f"{f}_{suffix}" for f in FEATURES]
    with src.open() as fin, dst.open("w", newline="") as fout:
        reader = csv.reader(fin)
        next(reader)
        writer = csv.writer(fout, lineterminator="\n")
        writer.writerow(header)
        for i, row in enumerate(reader, start=1):
            diagnosis = "M" if row[-1] == "0" else "B"
            writer.writerow([str(i), diagnosis] + row[:-1])
    return 0


if __name__ == "__main__":
    sys.exit(main())
