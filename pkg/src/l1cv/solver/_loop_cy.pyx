# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled ADMM inner loop; mirrors ``_loop_py.admm_loop`` step for step.

Matrix-vector products go through BLAS on the same buffers numpy would
use, so the two backends agree to rounding error.  The m x N matrix is
C-contiguous; viewed column-major it is its transpose, which serves both
A @ w and A' @ v through a single dgemv buffer.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt
from scipy.linalg.cython_blas cimport ddot, dgemv, dtrsv

from .types import _LoopResult

cnp.import_array()


cdef inline double _soft1(double v, double k) nogil:
    if v > k:
        return v - k
    elif v < -k:
        return v + k
    return 0.0


def admm_loop(double[:, ::1] A, double[::1, :] chol_lower, double[::1] y,
              double lam, state, int max_iter, double tol, int check_every,
              int adapt_until, double alpha):
    cdef int m = A.shape[0]
    cdef int n = A.shape[1]

    z1_arr = np.ascontiguousarray(state.z1, dtype=np.float64)
    z2_arr = np.ascontiguousarray(state.z2, dtype=np.float64)
    u1_arr = np.ascontiguousarray(state.u1, dtype=np.float64)
    u2_arr = np.ascontiguousarray(state.u2, dtype=np.float64)
    cdef double[::1] z1 = z1_arr
    cdef double[::1] z2 = z2_arr
    cdef double[::1] u1 = u1_arr
    cdef double[::1] u2 = u2_arr
    cdef double rho = state.rho

    x_arr = np.zeros(n)
    best_arr = np.zeros(n)
    cdef double[::1] x = x_arr
    cdef double[::1] best_x = best_arr
    cdef double[::1] w = np.zeros(n)
    cdef double[::1] q = np.zeros(m)
    cdef double[::1] vm = np.zeros(m)      # length-m scratch
    cdef double[::1] vn = np.zeros(n)      # length-n scratch
    cdef double[::1] z1_prev = np.zeros(m)
    cdef double[::1] z2_prev = np.zeros(n)

    # BLAS views: the C-contiguous (m, n) buffer is column-major (n, m)
    cdef int bm = n, bn = m, lda = n, inc = 1, mm = m
    cdef char TN = b'N', TT = b'T', UL = b'L', DN = b'N'
    cdef double one = 1.0, zero = 0.0, neg = -1.0
    cdef double* Ap = &A[0, 0]
    cdef double* Lp = &chol_lower[0, 0]

    cdef double y_norm = sqrt(ddot(&mm, &y[0], &inc, &y[0], &inc))
    cdef double sq_pri = sqrt(<double>(m + n))
    cdef double sq_dua = sqrt(<double>n)

    cdef double best_obj = np.inf
    cdef bint converged = False
    cdef double pri_rel = np.inf, dua_rel = np.inf
    cdef double thr1, thr2, qh, xh, val, z1n, z2n
    cdef double rn, sn, dn, ax_norm, z_norm, obj, acc, acc2
    cdef int it = 0, i, j
    cdef bint checking, relaxed = (alpha != 1.0)

    for it in range(1, max_iter + 1):
        checking = (it % check_every == 0) or it == max_iter
        if checking:
            z1_prev[:] = z1
            z2_prev[:] = z2

        # w = A' @ (y + z1 - u1) + (z2 - u2)
        for i in range(m):
            vm[i] = y[i] + z1[i] - u1[i]
        dgemv(&TN, &bm, &bn, &one, Ap, &lda, &vm[0], &inc, &zero, &w[0], &inc)
        for j in range(n):
            w[j] += z2[j] - u2[j]
        # q solves (I + AA') q = A w;  then x = w - A' q and A x == q
        dgemv(&TT, &bm, &bn, &one, Ap, &lda, &w[0], &inc, &zero, &q[0], &inc)
        dtrsv(&UL, &TN, &DN, &mm, Lp, &mm, &q[0], &inc)
        dtrsv(&UL, &TT, &DN, &mm, Lp, &mm, &q[0], &inc)
        x[:] = w
        dgemv(&TN, &bm, &bn, &neg, Ap, &lda, &q[0], &inc, &one, &x[0], &inc)

        thr1 = 1.0 / rho
        thr2 = lam / rho
        for i in range(m):
            qh = q[i] if not relaxed else alpha * q[i] + (1.0 - alpha) * (z1[i] + y[i])
            val = qh - y[i] + u1[i]
            z1n = _soft1(val, thr1)
            u1[i] += qh - y[i] - z1n
            z1[i] = z1n
        for j in range(n):
            xh = x[j] if not relaxed else alpha * x[j] + (1.0 - alpha) * z2[j]
            val = xh + u2[j]
            z2n = _soft1(val, thr2)
            u2[j] += xh - z2n
            z2[j] = z2n

        if checking:
            acc = 0.0
            for i in range(m):
                val = q[i] - z1[i] - y[i]
                acc += val * val
            for j in range(n):
                val = x[j] - z2[j]
                acc += val * val
            rn = sqrt(acc)

            for i in range(m):
                vm[i] = z1[i] - z1_prev[i]
            dgemv(&TN, &bm, &bn, &one, Ap, &lda, &vm[0], &inc, &zero, &vn[0], &inc)
            acc = 0.0
            for j in range(n):
                val = vn[j] + (z2[j] - z2_prev[j])
                acc += val * val
            sn = rho * sqrt(acc)

            dgemv(&TN, &bm, &bn, &one, Ap, &lda, &u1[0], &inc, &zero, &vn[0], &inc)
            acc = 0.0
            for j in range(n):
                val = vn[j] + u2[j]
                acc += val * val
            dn = rho * sqrt(acc)

            ax_norm = sqrt(ddot(&mm, &q[0], &inc, &q[0], &inc)
                           + ddot(&bm, &x[0], &inc, &x[0], &inc))
            z_norm = sqrt(ddot(&mm, &z1[0], &inc, &z1[0], &inc)
                          + ddot(&bm, &z2[0], &inc, &z2[0], &inc))
            val = ax_norm if ax_norm > z_norm else z_norm
            if y_norm > val:
                val = y_norm
            pri_rel = rn / (sq_pri + val)
            dua_rel = sn / (sq_dua + dn)

            acc = 0.0
            for i in range(m):
                acc += fabs(y[i] - q[i])
            acc2 = 0.0
            for j in range(n):
                acc2 += fabs(x[j])
            obj = acc + lam * acc2
            if obj < best_obj:
                best_obj = obj
                best_x[:] = x

            if pri_rel <= tol and dua_rel <= tol:
                converged = True
                break

            if it <= adapt_until:
                if rn > 10.0 * sn and rho < 1e8:
                    rho *= 2.0
                    for i in range(m):
                        u1[i] *= 0.5
                    for j in range(n):
                        u2[j] *= 0.5
                elif sn > 10.0 * rn and rho > 1e-8:
                    rho *= 0.5
                    for i in range(m):
                        u1[i] *= 2.0
                    for j in range(n):
                        u2[j] *= 2.0

    state.z1, state.z2, state.u1, state.u2 = z1_arr, z2_arr, u1_arr, u2_arr
    state.rho = rho
    return _LoopResult(x=x_arr, best_x=best_arr, best_objective=best_obj,
                       iterations=it, converged=converged,
                       primal_residual=pri_rel, dual_residual=dua_rel, rho=rho)
