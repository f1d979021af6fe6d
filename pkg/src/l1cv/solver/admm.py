"""Driver for the L1-data-fidelity LASSO solver (splitting scheme).

``LassoWorkspace`` caches the per-matrix Cholesky factorization so a
lambda sweep pays for it once; ``solve_l1_lasso`` is the one-shot entry
point.  The inner loop runs in a compiled extension when available and in
pure numpy otherwise; results agree to solver tolerance either way.
"""

import numpy as np

from ..errors import InvalidArgumentError
from ..model import SparseSignal
from .types import LassoProblem, SolverOptions, SolverResult, SolverState

try:  # compiled hot loop, built by setup.py when a toolchain is present
    from . import _loop_cy

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - build environment dependent
    _loop_cy = None
    HAVE_COMPILED = False

from . import _loop_py


def available_backends() -> tuple[str, ...]:
    return ("python", "compiled") if HAVE_COMPILED else ("python",)


def default_backend() -> str:
    return "compiled" if HAVE_COMPILED else "python"


def _loop_for(backend: str):
    if backend == "auto":
        backend = default_backend()
    if backend == "compiled":
        if not HAVE_COMPILED:
            raise InvalidArgumentError("compiled backend requested but not built")
        return _loop_cy.admm_loop
    return _loop_py.admm_loop


class LassoWorkspace:
    """Caches the factorization of (I + AA') for repeated solves on one matrix."""

    def __init__(self, matrix: np.ndarray):
        if matrix.ndim != 2:
            raise InvalidArgumentError("matrix must be 2-D")
        if not np.isfinite(matrix).all():
            raise InvalidArgumentError("matrix must be finite")
        self.matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        m = self.matrix.shape[0]
        gram = self.matrix @ self.matrix.T
        gram[np.diag_indices(m)] += 1.0
        # lower factor, Fortran order so backends can use it without copies
        self.chol_lower = np.asfortranarray(np.linalg.cholesky(gram))

    def fresh_state(self, rho: float) -> SolverState:
        m, n = self.matrix.shape
        return SolverState(z1=np.zeros(m), z2=np.zeros(n),
                           u1=np.zeros(m), u2=np.zeros(n), rho=rho)

    def solve(self, rhs: np.ndarray, lam: float, opts: SolverOptions = SolverOptions(),
              state: SolverState | None = None) -> tuple[SolverResult, SolverState]:
        """Solve for one lambda, optionally warm-starting from ``state``.

        Returns the result and the final state (reusable for the next
        lambda in a descending sweep).
        """
        problem = LassoProblem(matrix=self.matrix, rhs=rhs, lam=lam)
        y = np.ascontiguousarray(rhs, dtype=np.float64)
        if state is None:
            state = self.fresh_state(opts.rho)
        loop = _loop_for(opts.backend)
        raw = loop(self.matrix, self.chol_lower, y, float(lam), state,
                   opts.max_iterations, opts.tolerance, opts.check_every,
                   opts.adapt_until if opts.adapt_rho else 0,
                   opts.over_relaxation)

        # Prefer the sparse split iterate when it matches the best objective
        # seen; otherwise return the best iterate (spec: best-so-far on
        # non-convergence).
        z2 = state.z2.copy()
        obj_z2 = problem.objective(z2)
        if obj_z2 <= raw.best_objective + 1e-12 * (1.0 + abs(raw.best_objective)):
            estimate, objective = z2, obj_z2
        else:
            estimate, objective = raw.best_x, raw.best_objective
        result = SolverResult(estimate=estimate, objective=float(objective),
                              iterations=raw.iterations, converged=raw.converged,
                              primal_residual=float(raw.primal_residual),
                              dual_residual=float(raw.dual_residual))
        return result, state


def solve_l1_lasso(problem: LassoProblem, opts: SolverOptions = SolverOptions()) -> SolverResult:
    """Solve min_x ||rhs - A x||_1 + lam ||x||_1.

    Deterministic given identical inputs.  Non-convergence within
    ``opts.max_iterations`` is reported via ``converged=False`` with the
    best iterate found, not an exception.
    """
    ws = LassoWorkspace(problem.matrix)
    result, _ = ws.solve(problem.rhs, problem.lam, opts)
    return result


def recovery_error(signal: SparseSignal, result: SolverResult) -> float:
    """Euclidean distance between the true signal and an estimate."""
    if result.estimate.shape != signal.values.shape:
        raise InvalidArgumentError(
            f"estimate length {result.estimate.shape} does not match signal "
            f"length {signal.values.shape}")
    return float(np.linalg.norm(signal.values - result.estimate))
