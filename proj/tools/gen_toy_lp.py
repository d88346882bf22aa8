#!/usr/bin/env python3
# Copyright 2026 The scsdg Authors
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
"""Writes data/toy_lp.txt: min <c, x> s.t. A x = b, x >= 0 with n = 4, m = 3.

The instance is built around a known primal-dual pair: x* has one zero
entry, s* is positive exactly there, and c = A^T y* + s*, b = A x*.
"""

import argparse
import pathlib

import numpy as np

N, M = 4, 3


def generate(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(M, N))
    x_star = rng.uniform(0.0, 1.0, size=N)
    zero = int(rng.integers(N))
    x_star[zero] = 0.0
    s_star = np.zeros(N)
    s_star[zero] = rng.uniform(0.5, 1.5)
    y_star = rng.uniform(-1.0, 1.0, size=M)
    c = a.T @ y_star + s_star
    b = a @ x_star
    return a, b, c, x_star, y_star


def fmt(v):
    return repr(float(v))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "data" / "toy_lp.txt")
    args = parser.parse_args()
    a, b, c, x_star, y_star = generate(args.seed)
    lines = [
        f"# Toy LP, numpy default_rng({args.seed}); regenerate with tools/gen_toy_lp.py",
        "# x* = " + " ".join(fmt(v) for v in x_star),
        "# y* (A^T y + s = c convention) = " + " ".join(fmt(v) for v in y_star),
        f"VARS {N}",
        f"nonneg {N}",
        f"ROWS {M}",
        "OBJ MIN",
        " ".join(fmt(v) for v in c),
        f"TRIPLETS {M * N}",
    ]
    lines += [f"{i} {j} {fmt(a[i, j])}" for i in range(M) for j in range(N)]
    lines += ["RHS", " ".join(fmt(v) for v in b), "CONES", f"zero {M}", ""]
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("\n".join(lines))


if __name__ == "__main__":
    main()
