"""Problem, options, and result containers for the L1-L1 LASSO solver."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class LassoProblem:
    """min_x ||rhs - matrix @ x||_1 + lam * ||x||_1."""

    matrix: np.ndarray
    rhs: np.ndarray
    lam: float

    def __post_init__(self):
        if self.matrix.ndim != 2:
            raise InvalidArgumentError("matrix must be 2-D")
        if self.rhs.shape != (self.matrix.shape[0],):
            raise InvalidArgumentError(
                f"rhs length {self.rhs.shape} does not match {self.matrix.shape[0]} rows")
        if not (np.isfinite(self.matrix).all() and np.isfinite(self.rhs).all()):
            raise InvalidArgumentError("matrix and rhs must be finite")
        if not self.lam > 0:
            raise InvalidArgumentError(f"lam={self.lam} must be positive")

    def objective(self, x: np.ndarray) -> float:
        return float(np.abs(self.rhs - self.matrix @ x).sum() + self.lam * np.abs(x).sum())


@dataclass(frozen=True)
class SolverOptions:
    """Tuning knobs for the splitting solver.

    ``tolerance`` bounds the scale-normalized primal and dual residuals.
    The penalty is rebalanced (factor-2 residual balancing) only during
    the first ``adapt_until`` iterations and then frozen, which keeps the
    tail of the iteration linearly convergent.  ``backend`` selects the
    compiled inner loop, the pure-numpy one, or whichever is available.
    """

    max_iterations: int = 20000
    tolerance: float = 1e-7
    rho: float = 1.0
    over_relaxation: float = 1.0
    adapt_rho: bool = True
    adapt_until: int = 1000
    check_every: int = 25
    warm_start: bool = True
    backend: str = "auto"

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InvalidArgumentError("max_iterations must be positive")
        if not 0 < self.tolerance < 1:
            raise InvalidArgumentError("tolerance must lie in (0, 1)")
        if self.rho <= 0:
            raise InvalidArgumentError("rho must be positive")
        if not 0.5 <= self.over_relaxation <= 1.99:
            raise InvalidArgumentError("over_relaxation must lie in [0.5, 1.99]")
        if self.check_every < 1:
            raise InvalidArgumentError("check_every must be positive")
        if self.backend not in ("auto", "python", "compiled"):
            raise InvalidArgumentError(f"unknown backend {self.backend!r}")


@dataclass(frozen=True)
class SolverResult:
    """Solution and convergence diagnostics of one solve."""

    estimate: np.ndarray
    objective: float
    iterations: int
    converged: bool
    primal_residual: float
    dual_residual: float


@dataclass
class SolverState:
    """Split variables and penalty carried between warm-started solves."""

    z1: np.ndarray
    z2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    rho: float

    def copy(self) -> "SolverState":
        return SolverState(self.z1.copy(), self.z2.copy(), self.u1.copy(),
                           self.u2.copy(), self.rho)


@dataclass(frozen=True)
class _LoopResult:
    """Raw output of an inner-loop backend (before estimate selection)."""

    x: np.ndarray
    best_x: np.ndarray
    best_objective: float
    iterations: int
    converged: bool
    primal_residual: float
    dual_residual: float
    rho: float = field(default=1.0)
