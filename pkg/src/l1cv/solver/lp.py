"""Certifying LP oracle for the L1-L1 LASSO on small instances.

The problem min ||y - Ax||_1 + lam ||x||_1 is the linear program

    min 1'u + lam 1'v   s.t.  -u <= y - Ax <= u,  -v <= x <= v,

solved here by a self-contained Mehrotra predictor-corrector interior
point method.  Nothing is shared with the splitting solver: this is an
independent route used to certify it.  Per-iteration work is one Cholesky
factorization of a cols x cols Schur complement (the u and v blocks are
eliminated analytically), so the constraint matrix is never materialized.
"""

import numpy as np

from ..errors import InvalidArgumentError
from .types import LassoProblem, SolverResult

SIZE_GUARD = 10_000
_GAP_CERT = 1e-8  # certified relative duality gap
_TOL = 1e-10  # internal feasibility/gap target (margin below the certificate)
_MAX_ITER = 200


def _slack_blocks(A, y, x, u, v):
    Ax = A @ x
    return [y - Ax + u, Ax - y + u, v - x, v + x]


def _max_step(vals, deltas, eta=0.9995):
    """Largest step in [0, 1] keeping vals + step*deltas positive-ish."""
    step = 1.0
    for val, d in zip(vals, deltas):
        neg = d < 0
        if np.any(neg):
            step = min(step, float(np.min(-val[neg] / d[neg])))
    return min(1.0, eta * step)


def lp_oracle(problem: LassoProblem) -> SolverResult:
    """Solve the LASSO LP exactly, certifying the duality gap.

    Guarded to small instances (rows*cols <= 10^4); the problem is always
    feasible, so a certification failure is an internal error.
    """
    A = np.asarray(problem.matrix, dtype=np.float64)
    y = np.asarray(problem.rhs, dtype=np.float64)
    lam_reg = float(problem.lam)
    r, c = A.shape
    if r * c > SIZE_GUARD:
        raise InvalidArgumentError(
            f"lp_oracle size guard: rows*cols = {r * c} exceeds {SIZE_GUARD}")

    x = np.zeros(c)
    u = np.abs(y) + 1.0
    v = np.ones(c)
    s = _slack_blocks(A, y, x, u, v)
    lam = [np.ones(r), np.ones(r), np.ones(c), np.ones(c)]
    n_ineq = 2 * r + 2 * c
    h_norm = 1.0 + 2.0 * float(np.linalg.norm(y))
    c_norm = 1.0 + float(np.sqrt(r + lam_reg ** 2 * c))

    iterations = 0
    rd_rel = rp_rel = gap_rel = np.inf
    for iterations in range(1, _MAX_ITER + 1):
        l1, l2, l3, l4 = lam
        s1, s2, s3, s4 = s
        # residuals of the KKT system
        rd_x = A.T @ (l1 - l2) + (l3 - l4)
        rd_u = 1.0 - l1 - l2
        rd_v = lam_reg - l3 - l4
        Ax = A @ x
        rp1 = Ax - u + s1 - y
        rp2 = -Ax - u + s2 + y
        rp3 = x - v + s3
        rp4 = -x - v + s4
        rp = [rp1, rp2, rp3, rp4]
        rd = [rd_x, rd_u, rd_v]

        gap = sum(float(si @ li) for si, li in zip(s, lam))
        obj = float(u.sum() + lam_reg * v.sum())
        rp_rel = np.sqrt(sum(float(ri @ ri) for ri in rp)) / h_norm
        rd_rel = np.sqrt(sum(float(ri @ ri) for ri in rd)) / c_norm
        gap_rel = gap / (1.0 + abs(obj))
        if rp_rel <= _TOL and rd_rel <= _TOL and gap_rel <= _TOL:
            break

        d = [li / si for li, si in zip(lam, s)]
        d1, d2, d3, d4 = d
        sig12 = d1 + d2
        sig34 = d3 + d4
        e12 = 4.0 * d1 * d2 / sig12
        e34 = 4.0 * d3 * d4 / sig34
        K = A.T @ (e12[:, None] * A)
        K[np.diag_indices(c)] += e34
        chol = _chol_with_jitter(K)

        mu = gap / n_ineq

        def solve_direction(rc_blocks):
            phi = [rci / si + di * rpi
                   for rci, si, di, rpi in zip(rc_blocks, s, d, rp)]
            g_x = -rd_x - (A.T @ (phi[0] - phi[1]) + (phi[2] - phi[3]))
            g_u = -rd_u + (phi[0] + phi[1])
            g_v = -rd_v + (phi[2] + phi[3])
            rhs = g_x + A.T @ ((d1 - d2) / sig12 * g_u) + (d3 - d4) / sig34 * g_v
            dx = _chol_solve(chol, rhs)
            Adx = A @ dx
            du = (g_u + (d1 - d2) * Adx) / sig12
            dv = (g_v + (d3 - d4) * dx) / sig34
            Gdz = [Adx - du, -Adx - du, dx - dv, -dx - dv]
            ds = [-rpi - gi for rpi, gi in zip(rp, Gdz)]
            dlam = [(rci - li * dsi) / si
                    for rci, li, dsi, si in zip(rc_blocks, lam, ds, s)]
            return dx, du, dv, ds, dlam

        # predictor
        rc_aff = [-si * li for si, li in zip(s, lam)]
        dxa, dua, dva, dsa, dla = solve_direction(rc_aff)
        a_p = _max_step(s, dsa, eta=1.0)
        a_d = _max_step(lam, dla, eta=1.0)
        mu_aff = sum(float((si + a_p * dsi) @ (li + a_d * dli))
                     for si, dsi, li, dli in zip(s, dsa, lam, dla)) / n_ineq
        sigma = (max(mu_aff, 0.0) / mu) ** 3 if mu > 0 else 0.0

        # corrector
        rc = [sigma * mu - si * li - dsi * dli
              for si, li, dsi, dli in zip(s, lam, dsa, dla)]
        dx, du, dv, ds, dlam = solve_direction(rc)
        a_p = _max_step(s, ds)
        a_d = _max_step(lam, dlam)
        x = x + a_p * dx
        u = u + a_p * du
        v = v + a_p * dv
        s = [si + a_p * dsi for si, dsi in zip(s, ds)]
        lam = [li + a_d * dli for li, dli in zip(lam, dlam)]

    if not (rp_rel <= 10 * _TOL and rd_rel <= 10 * _TOL and gap_rel <= _GAP_CERT):
        # the LP is always feasible and bounded; reaching here is a solver bug
        raise RuntimeError(
            f"lp_oracle failed to certify: rp={rp_rel:.2e} rd={rd_rel:.2e} "
            f"gap={gap_rel:.2e} after {iterations} iterations")

    objective = problem.objective(x)
    return SolverResult(estimate=x, objective=objective, iterations=iterations,
                        converged=True, primal_residual=float(rp_rel),
                        dual_residual=float(rd_rel))


def _chol_with_jitter(K):
    jitter = 0.0
    base = 1e-14 * (1.0 + float(np.trace(K)) / K.shape[0])
    for attempt in range(4):
        try:
            return np.linalg.cholesky(K if jitter == 0 else
                                      K + jitter * np.eye(K.shape[0]))
        except np.linalg.LinAlgError:
            jitter = base * 10.0 ** attempt
    raise RuntimeError("lp_oracle: Schur complement not positive definite")


def _chol_solve(L, b):
    from scipy.linalg import solve_triangular

    z = solve_triangular(L, b, lower=True, check_finite=False)
    return solve_triangular(L.T, z, lower=False, check_finite=False)
