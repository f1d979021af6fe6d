"""Scenario configuration: defaults, schema validation, overrides.

A configuration is a flat key/value mapping.  Built-in defaults for the
``fig1`` .. ``fig6`` scenarios follow the corresponding figure setups; a
TOML file and ``key=value`` overrides are overlaid on top.  Validation
errors always name the offending key (:class:`ConfigError`).
"""

import json
import math

from ..errors import ConfigError

SCENARIOS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "sweep")
SCENARIO_IDS = {name: i + 1 for i, name in enumerate(SCENARIOS)}

_POS = ("positive", lambda v: v > 0)
_NONNEG = ("nonnegative", lambda v: v >= 0)
_PROB = ("in [0, 1]", lambda v: 0.0 <= v <= 1.0)
_ANY = ("any", lambda v: True)

# key -> (python type, constraint, description)
SCHEMA = {
    "schema_version": (int, _POS, "config schema version"),
    "scenario": (str, _ANY, "scenario tag"),
    "seed": (int, _ANY, "root seed; all per-trial streams derive from it"),
    "jobs": (int, _POS, "worker processes (does not affect results)"),
    "N": (int, _POS, "signal length"),
    "m": (int, _POS, "total measurement rows"),
    "m_cv": (int, _POS, "holdout rows"),
    "m_recovery": (int, _POS, "recovery rows when m_cv is swept (m = m_recovery + m_cv)"),
    "s": (int, _POS, "signal sparsity"),
    "amp_sigma": (float, _POS, "std of nonzero signal entries"),
    "b": (float, _PROB, "impulse occurrence probability"),
    "mu_g": (float, _ANY, "impulse magnitude mean"),
    "sigma_g": (float, _NONNEG, "impulse magnitude std"),
    "sigma_n": (float, _NONNEG, "Gaussian noise scale"),
    "trials": (int, _POS, "Monte Carlo trials per sweep point"),
    "realizations": (int, _POS, "holdout redraws for distribution scenarios"),
    "chunk": (int, _POS, "realizations per task (no effect on results)"),
    "sweep": (list, _ANY, "sweep grid (fig1: b, fig2: sigma_n, fig4: m_cv)"),
    "lambda_grid": (list, _ANY, "candidate regularization values"),
    "lambda_fixed": (float, _POS, "lambda for single-solve scenarios"),
    "lambda_pair": (list, _ANY, "two lambdas producing the fig5 estimate pair"),
    "pair_grid": (list, _ANY, "lambdas whose consecutive solves form fig6 pairs"),
    "drmse_bins": (int, _POS, "number of delta-RMSE bins for fig6"),
    "rho_ci": (float, _NONNEG, "confidence parameter for fig4 intervals"),
    "solver_tolerance": (float, _POS, "solver residual tolerance"),
    "solver_max_iterations": (int, _POS, "solver iteration cap"),
    "solver_rho": (float, _POS, "initial splitting penalty"),
    "warm_start": (bool, _ANY, "warm-start the descending lambda sweep"),
    "solver_backend": (str, _ANY, "auto | python | compiled"),
}

_MODEL_KEYS = ("N", "s", "amp_sigma", "b", "mu_g", "sigma_g", "sigma_n")
_SOLVER_KEYS = ("solver_tolerance", "solver_max_iterations", "solver_rho",
                "warm_start", "solver_backend")
_BASE = {
    "schema_version": 1,
    "seed": 0,
    "jobs": 1,
    "N": 1200,
    "s": 50,
    "amp_sigma": math.sqrt(10.0),
    "mu_g": 700.0,
    "sigma_g": 100.0,
    "sigma_n": 0.5,
    # desk-scale solver settings; module-level SolverOptions defaults are
    # tighter, but sweep ranking is insensitive beyond this tolerance
    "solver_tolerance": 1e-4,
    "solver_max_iterations": 1500,
    "solver_rho": 1.0,
    "warm_start": True,
    "solver_backend": "auto",
}
_PAPER_GRID = [10.0 ** k for k in range(-3, 5)]

DEFAULTS = {
    "fig1": {
        **_BASE, "scenario": "fig1", "m": 420, "m_cv": 20, "b": 0.01,
        "sweep": [round(0.01 * k, 2) for k in range(1, 11)],
        "trials": 200, "lambda_grid": _PAPER_GRID,
    },
    "fig2": {
        **_BASE, "scenario": "fig2", "m": 420, "m_cv": 20, "amp_sigma": 10.0,
        "b": 0.02, "sweep": [0.0, 3.0, 6.0, 9.0, 12.0, 15.0],
        "trials": 200, "lambda_grid": _PAPER_GRID,
    },
    "fig3": {
        **_BASE, "scenario": "fig3", "m": 800, "m_cv": 400, "b": 0.1,
        "realizations": 10_000, "chunk": 100, "lambda_fixed": 1.0,
    },
    "fig4": {
        **_BASE, "scenario": "fig4", "m_recovery": 400, "b": 0.1,
        "sweep": [40, 80, 120, 160, 200], "trials": 1000,
        "lambda_fixed": 1.0, "rho_ci": 3.0,
    },
    "fig5": {
        **_BASE, "scenario": "fig5", "m": 440, "m_cv": 40, "b": 0.1,
        "realizations": 10_000, "chunk": 250, "lambda_pair": [10.0, 1.0],
    },
    "fig6": {
        **_BASE, "scenario": "fig6", "m": 420, "m_cv": 20, "b": 0.05,
        "mu_g": 1000.0, "sigma_g": 20.0, "realizations": 2000, "chunk": 100,
        # dense lambdas across the support-collapse transition, where the
        # delta-RMSE axis actually gets populated
        "pair_grid": [round(10.0 ** (0.04 * k), 6) for k in range(0, 11)],
        "drmse_bins": 8,
    },
    "sweep": {
        **_BASE, "scenario": "sweep", "m": 420, "m_cv": 20, "b": 0.02,
        "lambda_grid": _PAPER_GRID,
    },
}

_REQUIRED = {
    "fig1": ("m", "m_cv", "sweep", "trials", "lambda_grid"),
    "fig2": ("m", "m_cv", "sweep", "trials", "lambda_grid"),
    "fig3": ("m", "m_cv", "realizations", "lambda_fixed"),
    "fig4": ("m_recovery", "sweep", "trials", "lambda_fixed", "rho_ci"),
    "fig5": ("m", "m_cv", "realizations", "lambda_pair"),
    "fig6": ("m", "m_cv", "realizations", "pair_grid", "drmse_bins"),
    "sweep": ("m", "m_cv", "lambda_grid"),
}


def scenario_defaults(scenario: str) -> dict:
    if scenario not in DEFAULTS:
        raise ConfigError(f"scenario: unknown scenario {scenario!r}")
    return dict(DEFAULTS[scenario])


def _coerce(key: str, value):
    if key not in SCHEMA:
        raise ConfigError(f"{key}: unknown configuration key")
    typ, _, _ = SCHEMA[key]
    if typ is bool:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false"):
            return value.lower() == "true"
        raise ConfigError(f"{key}: expected a boolean, got {value!r}")
    if typ is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if typ is int:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{key}: expected an integer, got {value!r}")
        return int(value)
    if not isinstance(value, typ):
        raise ConfigError(f"{key}: expected {typ.__name__}, got {value!r}")
    return value


def parse_override(text: str) -> tuple[str, object]:
    """Parse one ``key=value`` override; values use JSON syntax."""
    if "=" not in text:
        raise ConfigError(f"{text!r}: overrides must look like key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if key not in SCHEMA:
        raise ConfigError(f"{key}: unknown configuration key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw  # bare strings (e.g. backend names)
    return key, value


def resolve_config(scenario: str, file_config: dict | None = None,
                   overrides: list | None = None) -> dict:
    """Overlay defaults <- file <- overrides, then validate."""
    cfg = scenario_defaults(scenario)
    for source in (file_config or {}), dict(overrides or {}):
        for key, value in source.items():
            if key == "scenario" and value != scenario:
                raise ConfigError(f"scenario: file says {value!r}, requested {scenario!r}")
            cfg[key] = _coerce(key, value)
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    scenario = cfg.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario: unknown scenario {scenario!r}")
    for key, value in cfg.items():
        typ, (desc, check), _ = SCHEMA[key]
        if typ in (int, float) and not check(value):
            raise ConfigError(f"{key}: value {value!r} must be {desc}")
    for key in _REQUIRED[scenario]:
        if key not in cfg:
            raise ConfigError(f"{key}: required for scenario {scenario!r}")

    if "m" in cfg and "m_cv" in cfg and cfg["m_cv"] >= cfg["m"]:
        raise ConfigError(f"m_cv: must be smaller than m (got m_cv={cfg['m_cv']}, m={cfg['m']})")
    if cfg["s"] > cfg["N"]:
        raise ConfigError(f"s: must not exceed N (got s={cfg['s']}, N={cfg['N']})")
    for key in ("sweep", "lambda_grid", "lambda_pair", "pair_grid"):
        if key in cfg:
            values = cfg[key]
            if not values or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                                     for v in values):
                raise ConfigError(f"{key}: must be a nonempty list of numbers")
    if "lambda_grid" in cfg:
        grid = cfg["lambda_grid"]
        if any(v <= 0 for v in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("lambda_grid: must be strictly increasing and positive")
    if "lambda_pair" in cfg and len(cfg["lambda_pair"]) != 2:
        raise ConfigError("lambda_pair: exactly two values required")
    if scenario == "fig1" and not all(0.0 <= v <= 1.0 for v in cfg["sweep"]):
        raise ConfigError("sweep: fig1 sweeps b, so values must lie in [0, 1]")
    if scenario == "fig2" and not all(v >= 0 for v in cfg["sweep"]):
        raise ConfigError("sweep: fig2 sweeps sigma_n, so values must be nonnegative")
    if scenario == "fig4":
        if not all(isinstance(v, int) or float(v).is_integer() for v in cfg["sweep"]):
            raise ConfigError("sweep: fig4 sweeps m_cv, so values must be integers")
        if any(v < 1 for v in cfg["sweep"]):
            raise ConfigError("sweep: fig4 m_cv values must be positive")
