#!/usr/bin/env python3
# Copyright 2026 The ccsmoea Authors.
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
"""Generates synthetic instances in the OR-Library port layout.

Each instance comes from a one-factor market model, so the correlation
matrix is positive definite. The unconstrained efficient frontier
(long-only, fully invested) is traced with an exact QP solve per target
return and written in the portef layout ("mean variance" per line).

Usage: make_synthetic_instances.py <out_dir>
"""

import pathlib
import sys

import cvxpy as cp
import numpy as np


def make_instance(n, seed):
    rng = np.random.default_rng(seed)
    market_vol = 0.03
    beta = rng.uniform(0.4, 1.4, n)
    idio = rng.uniform(0.012, 0.045, n)
    sigma = np.sqrt((beta * market_vol) ** 2 + idio**2)
    mu = -0.001 + 0.0055 * beta + rng.normal(0.0, 0.0015, n)
    rho = np.outer(beta, beta) * market_vol**2 / np.outer(sigma, sigma)
    np.fill_diagonal(rho, 1.0)
    # Round to file precision before anything downstream sees the numbers.
    mu = np.round(mu, 6)
    sigma = np.round(sigma, 6)
    rho = np.round(rho, 6)
    np.fill_diagonal(rho, 1.0)
    return mu, sigma, rho


def write_port(path, mu, sigma, rho):
    n = len(mu)
    with open(path, "w") as f:
        f.write(f"{n}\n")
        for m, s in zip(mu, sigma):
            f.write(f"{m:.6f} {s:.6f}\n")
        for i in range(n):
            for j in range(i, n):
                f.write(f"{i + 1} {j + 1} {rho[i, j]:.6f}\n")


def trace_frontier(mu, sigma, rho, points):
    n = len(mu)
    cov = rho * np.outer(sigma, sigma)
    cov = 0.5 * (cov + cov.T)
    w = cp.Variable(n)
    target = cp.Parameter()
    base = [cp.sum(w) == 1, w >= 0]
    min_var = cp.Problem(cp.Minimize(cp.quad_form(w, cov)), base)
    min_var.solve(solver=cp.CLARABEL)
    lo = float(mu @ w.value)
    hi = float(mu.max())
    problem = cp.Problem(cp.Minimize(cp.quad_form(w, cov)),
                         base + [mu @ w == target])
    front = []
    for r in np.linspace(lo, hi, points):
        target.value = r
        problem.solve(solver=cp.CLARABEL)
        x = np.clip(w.value, 0.0, None)
        x /= x.sum()
        front.append((float(mu @ x), float(x @ cov @ x)))
    return front


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(parents=True, exist_ok=True)
    for name, n, seed, points in (("synth31", 31, 20181001, 2000),
                                  ("synth10", 10, 7, 500)):
        mu, sigma, rho = make_instance(n, seed)
        write_port(out / f"{name}.txt", mu, sigma, rho)
        front = trace_frontier(mu, sigma, rho, points)
        with open(out / f"{name}_front.txt", "w") as f:
            for ret, var in front:
                f.write(f"{ret:.10f} {var:.12f}\n")
        print(f"{name}: {n} assets, {len(front)} frontier points")


if __name__ == "__main__":
    main()
