"""L1-data-fidelity LASSO solver with an independent LP certification oracle."""

from .admm import (LassoWorkspace, available_backends, default_backend,
                   recovery_error, solve_l1_lasso)
from .lp import lp_oracle
from .types import LassoProblem, SolverOptions, SolverResult, SolverState

__all__ = [
    "LassoProblem",
    "LassoWorkspace",
    "SolverOptions",
    "SolverResult",
    "SolverState",
    "available_backends",
    "default_backend",
    "lp_oracle",
    "recovery_error",
    "solve_l1_lasso",
]
