"""Pure-numpy ADMM inner loop for the L1-L1 LASSO.

Reference implementation of the hot kernel; the compiled extension in
``_loop_cy.pyx`` mirrors the same operation sequence.  Splitting:

    min ||z1||_1 + lam * ||z2||_1   s.t.  A x - z1 = y,  x - z2 = 0

with a single penalty rho and scaled duals u1, u2.  The x-update solves
(A'A + I) x = A'(y + z1 - u1) + (z2 - u2) through the cached Cholesky
factor of (I + AA'); the identity A x = q (with q the small-system
solution) saves one matrix-vector product per iteration.
"""

import numpy as np
from scipy.linalg import cho_solve

from .types import SolverState, _LoopResult


def _soft(v, k):
    # exactly-at-threshold values map to 0
    return np.sign(v) * np.maximum(np.abs(v) - k, 0.0)


def admm_loop(A, chol_lower, y, lam, state: SolverState, max_iter, tol,
              check_every, adapt_until, alpha) -> _LoopResult:
    m, n = A.shape
    z1, z2, u1, u2 = state.z1, state.z2, state.u1, state.u2
    rho = state.rho
    x = z2.copy()
    q = np.zeros(m)
    y_norm = float(np.sqrt(y @ y))
    sq_pri = np.sqrt(m + n)
    sq_dua = np.sqrt(n)

    best_obj = np.inf
    best_x = x.copy()
    converged = False
    pri_rel = np.inf
    dua_rel = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        checking = (it % check_every == 0) or it == max_iter
        if checking:
            z1_prev = z1.copy()
            z2_prev = z2.copy()

        w = A.T @ (y + z1 - u1) + (z2 - u2)
        t = A @ w
        q = cho_solve((chol_lower, True), t, check_finite=False)
        x = w - A.T @ q
        # A @ x == q up to the factorization solve: reuse it everywhere

        if alpha == 1.0:
            qh = q
            xh = x
        else:
            qh = alpha * q + (1.0 - alpha) * (z1 + y)
            xh = alpha * x + (1.0 - alpha) * z2
        z1 = _soft(qh - y + u1, 1.0 / rho)
        u1 = u1 + (qh - y - z1)
        z2 = _soft(xh + u2, lam / rho)
        u2 = u2 + (xh - z2)

        if checking:
            r1 = q - z1 - y
            r2 = x - z2
            rn = float(np.sqrt(r1 @ r1 + r2 @ r2))
            dz1 = z1 - z1_prev
            dz2 = z2 - z2_prev
            sv = A.T @ dz1 + dz2
            sn = rho * float(np.sqrt(sv @ sv))
            dv = A.T @ u1 + u2
            dn = rho * float(np.sqrt(dv @ dv))
            ax_norm = float(np.sqrt(q @ q + x @ x))
            z_norm = float(np.sqrt(z1 @ z1 + z2 @ z2))
            pri_rel = rn / (sq_pri + max(ax_norm, z_norm, y_norm))
            dua_rel = sn / (sq_dua + dn)

            obj = float(np.abs(y - q).sum() + lam * np.abs(x).sum())
            if obj < best_obj:
                best_obj = obj
                best_x = x.copy()

            if pri_rel <= tol and dua_rel <= tol:
                converged = True
                break

            if it <= adapt_until:
                if rn > 10.0 * sn and rho < 1e8:
                    rho *= 2.0
                    u1 *= 0.5
                    u2 *= 0.5
                elif sn > 10.0 * rn and rho > 1e-8:
                    rho *= 0.5
                    u1 *= 2.0
                    u2 *= 2.0

    state.z1, state.z2, state.u1, state.u2, state.rho = z1, z2, u1, u2, rho
    return _LoopResult(x=x, best_x=best_x, best_objective=best_obj,
                       iterations=it, converged=converged,
                       primal_residual=pri_rel, dual_residual=dua_rel, rho=rho)
