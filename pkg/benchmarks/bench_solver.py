#!/usr/bin/env python3
"""Benchmark the compiled ADMM inner loop against the pure-numpy one.

Both backends run the identical operation sequence, so iteration counts
match and objectives agree to rounding error; the interesting number is
iterations per second.  Small problems are Python-overhead bound (the
compiled loop wins big); at production scale both are BLAS-bound.

Usage: python benchmarks/bench_solver.py [--quick]
"""

import argparse
import time

import numpy as np
from threadpoolctl import threadpool_limits

from l1cv.solver import (LassoWorkspace, SolverOptions, available_backends,
                         solve_l1_lasso)
from l1cv.solver.types import LassoProblem


def make_problem(rng, m, n, lam):
    A = rng.normal(0, 1 / np.sqrt(m), (m, n))
    x0 = np.zeros(n)
    x0[rng.choice(n, max(2, n // 20), replace=False)] = rng.normal(0, 3, max(2, n // 20))
    u = rng.random(m)
    impulses = np.where(u < 0.025, 1.0, np.where(u < 0.05, -1.0, 0.0))
    y = A @ x0 + rng.normal(0, 0.05, m) + impulses * rng.normal(700, 100, m)
    return LassoProblem(matrix=A, rhs=y, lam=lam)


def run_case(name, problem, iters, repeats):
    print(f"\n{name}: {problem.matrix.shape[0]}x{problem.matrix.shape[1]}, "
          f"lam={problem.lam}, {iters} iterations x {repeats}")
    rates = {}
    objectives = {}
    for backend in available_backends():
        opts = SolverOptions(tolerance=1e-15, max_iterations=iters, backend=backend)
        ws = LassoWorkspace(problem.matrix)
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            result, _ = ws.solve(problem.rhs, problem.lam, opts)
            best = min(best, time.perf_counter() - t0)
        rates[backend] = result.iterations / best
        objectives[backend] = result.objective
        print(f"  {backend:9s} {best:8.3f}s  {rates[backend]:10.0f} iter/s  "
              f"objective {result.objective:.6f}")
    if len(rates) == 2:
        print(f"  speedup (compiled/python): {rates['compiled'] / rates['python']:.2f}x")
        rel = abs(objectives["compiled"] - objectives["python"]) / (
            1 + abs(objectives["python"]))
        print(f"  objective agreement: {rel:.2e} relative")
        assert rel < 1e-9, "backends disagree"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller iteration budgets")
    args = parser.parse_args()
    scale = 0.2 if args.quick else 1.0

    print("available backends:", ", ".join(available_backends()))
    rng = np.random.default_rng(0)
    with threadpool_limits(limits=1):
        run_case("tiny (oracle-certification regime)",
                 make_problem(rng, 25, 50, 0.1), int(20000 * scale), 3)
        run_case("mid", make_problem(rng, 120, 360, 1.0), int(5000 * scale), 3)
        run_case("production (figure regime)",
                 make_problem(rng, 400, 1200, 1.0), int(1500 * scale), 2)

    # convergence sanity at default tolerance on the tiny case
    res = solve_l1_lasso(make_problem(rng, 25, 50, 0.1),
                         SolverOptions(tolerance=1e-7, max_iterations=60000))
    print(f"\ntiny-case convergence: {res.iterations} iterations, "
          f"converged={res.converged}")


if __name__ == "__main__":
    main()
