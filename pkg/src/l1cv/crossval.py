"""Holdout cross-validation over a regularization grid.

Rows are split once into recovery and holdout sets; the solver sees only
recovery rows, and both CV errors (L1 and L2) are computed from the same
stored holdout residual per lambda.  Selection returns the grid index
minimizing each criterion, plus the oracle index minimizing the true
recovery error.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .model import MeasurementSet, SparseSignal
from .solver import LassoWorkspace, SolverOptions


@dataclass(frozen=True)
class CvSplit:
    """Disjoint partition of row indices into recovery and holdout sets."""

    recovery_rows: np.ndarray
    holdout_rows: np.ndarray

    def __post_init__(self):
        rec = np.asarray(self.recovery_rows)
        hold = np.asarray(self.holdout_rows)
        m = rec.size + hold.size
        union = np.union1d(rec, hold)
        if union.size != m or union[0] != 0 or union[-1] != m - 1:
            raise InvalidArgumentError(
                "recovery and holdout rows must partition 0..m-1 disjointly")

    @property
    def m(self) -> int:
        return self.recovery_rows.size + self.holdout_rows.size

    @property
    def m_cv(self) -> int:
        return self.holdout_rows.size


@dataclass(frozen=True)
class LambdaGrid:
    """Strictly increasing, strictly positive candidate set."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size == 0:
            raise InvalidArgumentError("grid must be a nonempty vector")
        if not (v > 0).all():
            raise InvalidArgumentError("grid values must be positive")
        if not (np.diff(v) > 0).all():
            raise InvalidArgumentError("grid values must be strictly increasing")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @classmethod
    def paper_default(cls) -> "LambdaGrid":
        """Eight-decade logarithmic grid 1e-3 .. 1e4."""
        return cls(values=10.0 ** np.arange(-3.0, 5.0))

    @classmethod
    def logspace(cls, start_decade: float, stop_decade: float,
                 per_decade: int = 1) -> "LambdaGrid":
        n = int(round((stop_decade - start_decade) * per_decade)) + 1
        return cls(values=np.logspace(start_decade, stop_decade, n))


@dataclass(frozen=True)
class LambdaRecord:
    """Per-lambda sweep outputs."""

    lam: float
    estimate: np.ndarray
    eps_cv_l1: float
    eps_cv_l2: float
    eps_x: float
    converged: bool


@dataclass(frozen=True)
class SweepResult:
    per_lambda: list
    chosen_l1: int
    chosen_l2: int
    chosen_oracle: int

    def record(self, index: int) -> LambdaRecord:
        return self.per_lambda[index]


def make_split(m: int, m_cv: int, rng_seed: int) -> CvSplit:
    """Draw the holdout rows uniformly without replacement."""
    if m < 1 or m_cv < 1:
        raise InvalidArgumentError("m and m_cv must be positive")
    if m_cv >= m:
        raise InvalidArgumentError(f"m_cv={m_cv} must be smaller than m={m}")
    rng = np.random.default_rng(rng_seed)
    holdout = np.sort(rng.choice(m, size=m_cv, replace=False))
    recovery = np.setdiff1d(np.arange(m), holdout, assume_unique=True)
    return CvSplit(recovery_rows=recovery, holdout_rows=holdout)


def _holdout_residual(holdout_rhs, holdout_matrix, estimate):
    rhs = np.asarray(holdout_rhs, dtype=np.float64)
    mat = np.asarray(holdout_matrix, dtype=np.float64)
    est = np.asarray(estimate, dtype=np.float64)
    if mat.ndim != 2 or rhs.shape != (mat.shape[0],) or est.shape != (mat.shape[1],):
        raise InvalidArgumentError(
            f"inconsistent shapes: rhs {rhs.shape}, matrix {mat.shape}, "
            f"estimate {est.shape}")
    return rhs - mat @ est


def cv_error_l1(holdout_rhs, holdout_matrix, estimate) -> float:
    """L1 norm of the holdout residual."""
    return float(np.abs(_holdout_residual(holdout_rhs, holdout_matrix, estimate)).sum())


def cv_error_l2(holdout_rhs, holdout_matrix, estimate) -> float:
    """Euclidean norm of the holdout residual."""
    return float(np.linalg.norm(_holdout_residual(holdout_rhs, holdout_matrix, estimate)))


def sweep_lambda(measurements: MeasurementSet, split: CvSplit, grid: LambdaGrid,
                 signal: SparseSignal, opts: SolverOptions = SolverOptions()) -> SweepResult:
    """Solve per lambda on recovery rows; score on holdout rows.

    Lambdas are solved in descending order so warm starts help (disable
    via ``opts.warm_start``); records are returned in grid order.  A
    non-converged solve is flagged but still ranked.
    """
    A = measurements.matrix.entries
    if split.m != measurements.matrix.m:
        raise InvalidArgumentError(
            f"split covers {split.m} rows but matrix has {measurements.matrix.m}")
    A_rec = np.ascontiguousarray(A[split.recovery_rows])
    y_rec = measurements.noisy[split.recovery_rows]
    A_cv = A[split.holdout_rows]
    y_cv = measurements.noisy[split.holdout_rows]

    ws = LassoWorkspace(A_rec)
    records: list = [None] * len(grid)
    state = None
    for idx in range(len(grid) - 1, -1, -1):
        lam = float(grid.values[idx])
        result, state = ws.solve(y_rec, lam, opts, state if opts.warm_start else None)
        residual = y_cv - A_cv @ result.estimate
        records[idx] = LambdaRecord(
            lam=lam,
            estimate=result.estimate,
            eps_cv_l1=float(np.abs(residual).sum()),
            eps_cv_l2=float(np.linalg.norm(residual)),
            eps_x=float(np.linalg.norm(signal.values - result.estimate)),
            converged=result.converged,
        )

    eps1 = np.array([r.eps_cv_l1 for r in records])
    eps2 = np.array([r.eps_cv_l2 for r in records])
    epsx = np.array([r.eps_x for r in records])
    return SweepResult(
        per_lambda=records,
        chosen_l1=int(np.argmin(eps1)),
        chosen_l2=int(np.argmin(eps2)),
        chosen_oracle=int(np.argmin(epsx)),
    )
