"""Monte Carlo harness: scenario configs, runners, records, statistics."""

from .config import (DEFAULTS, SCENARIO_IDS, SCENARIOS, parse_override,
                     resolve_config, scenario_defaults, validate_config)
from .figures import (RUNNERS, run_fig1, run_fig2, run_fig3, run_fig4,
                      run_fig5, run_fig6, run_sweep)
from .records import CSV_HEADER, ExperimentRecord, load_record
from .stats import binomial_ci, ks_statistic, mean_stderr

__all__ = [
    "CSV_HEADER",
    "DEFAULTS",
    "ExperimentRecord",
    "RUNNERS",
    "SCENARIOS",
    "SCENARIO_IDS",
    "binomial_ci",
    "ks_statistic",
    "load_record",
    "mean_stderr",
    "parse_override",
    "resolve_config",
    "run_fig1",
    "run_fig2",
    "run_fig3",
    "run_fig4",
    "run_fig5",
    "run_fig6",
    "run_sweep",
    "scenario_defaults",
    "validate_config",
]
