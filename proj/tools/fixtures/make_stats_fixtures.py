# Copyright 2026 The debatenet Authors.
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

"""Regenerates tests/data/stats_fixtures.txt from SciPy and statsmodels."""

import numpy as np
from scipy.stats import chi2_contingency
from statsmodels.stats.proportion import proportions_ztest

rng = np.random.default_rng(20260501)
lines = ["# chi rows cols cells... statistic df p",
         "# z k1 n1 k2 n2 z p"]
count = 0
while count < 50:
    rows, cols = rng.integers(2, 5, size=2)
    table = rng.integers(1, 200, size=(rows, cols))
    stat, p, dof, _ = chi2_contingency(table, correction=False)
    cells = " ".join(str(v) for v in table.ravel())
    lines.append(f"chi {rows} {cols} {cells} {float(stat)!r} {dof} {float(p)!r}")
    count += 1
count = 0
while count < 50:
    n1, n2 = rng.integers(5, 5000, size=2)
    k1 = rng.integers(0, n1 + 1)
    k2 = rng.integers(0, n2 + 1)
    if k1 + k2 in (0, n1 + n2):
        continue
    z, p = proportions_ztest([k1, k2], [n1, n2])
    lines.append(f"z {k1} {n1} {k2} {n2} {float(z)!r} {float(p)!r}")
    count += 1
with open("tests/data/stats_fixtures.txt", "w") as f:
    f.write("\n".join(lines) + "\n")
