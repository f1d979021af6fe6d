"""Deterministic task execution for Monte Carlo trials.

Tasks are pure functions of (config, key); keys carry their own derived
seeds, so results are independent of scheduling.  BLAS pools are pinned
to one thread for the whole run: float results are then identical at any
parallelism level, and process-level parallelism stays efficient.
"""

import concurrent.futures as cf

from threadpoolctl import threadpool_limits

_WORKER_LIMITER = None


def _worker_init():
    global _WORKER_LIMITER
    _WORKER_LIMITER = threadpool_limits(limits=1)


def run_tasks(fn, config: dict, keys: list, jobs: int = 1) -> list:
    """Evaluate ``fn(config, key)`` for every key, in key order.

    Each evaluation is wrapped so one failing trial does not kill the
    run; entries come back as ("ok", payload) or ("error", message).
    """
    if jobs <= 1:
        with threadpool_limits(limits=1):
            return [_safe(fn, config, key) for key in keys]
    with threadpool_limits(limits=1):
        with cf.ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init) as pool:
            chunk = max(1, len(keys) // (jobs * 8))
            return list(pool.map(_Task(fn, config), keys, chunksize=chunk))


class _Task:
    """Picklable closure binding fn and config for pool workers."""

    def __init__(self, fn, config):
        self.fn = fn
        self.config = config

    def __call__(self, key):
        return _safe(self.fn, self.config, key)


def _safe(fn, config, key):
    try:
        return ("ok", fn(config, key))
    except Exception as exc:  # noqa: BLE001 - trial isolation is the point
        return ("error", f"{type(exc).__name__}: {exc}")
