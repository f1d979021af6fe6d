"""Figure rendering from experiment record JSON files.

Overlay sets per scenario:

* fig1 / fig2: mean-RMSE curves (L1-CV, L2-CV, oracle) with standard
  error bars against the sweep axis.
* fig3 / fig5: density histogram of the collected samples with the
  predicted Gaussian pdf overlaid.
* fig4: mean lower/upper bound curves and the mean true error vs m_cv.
* fig6: theoretical ordering-probability curve and empirical frequencies
  against delta-RMSE.

Rendering is deterministic: fixed style, fixed PNG metadata, no
timestamps, so re-rendering a record reproduces the file byte for byte.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

SCENARIOS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "sweep")

_AXIS_LABELS = {
    "fig1": ("impulse probability b", "mean RMSE"),
    "fig2": ("Gaussian noise scale sigma_n", "mean RMSE"),
    "fig3": ("L1 CV error", "density"),
    "fig4": ("holdout size m_cv", "bound on sqrt(eps_x^2 + sigma_n^2)"),
    "fig5": ("CV error difference", "density"),
    "fig6": ("delta RMSE", "P(eps_cv_p >= eps_cv_q)"),
    "sweep": ("lambda", "error"),
}

_OVERLAYS = {
    "fig1": ("rmse_l1", "rmse_l2", "rmse_oracle"),
    "fig2": ("rmse_l1", "rmse_l2", "rmse_oracle"),
    "fig3": ("histogram", "theory_pdf"),
    "fig4": ("lower_bound", "upper_bound", "true_error"),
    "fig5": ("histogram", "theory_pdf"),
    "fig6": ("theory_curve", "empirical_points"),
    "sweep": ("eps_x", "eps_cv_l1", "eps_cv_l2"),
}


class RecordMismatchError(ValueError):
    """Record file is missing, malformed, or from a different scenario."""


@dataclass(frozen=True)
class FigureSpec:
    """What to render: record in, image out, plus style knobs."""

    scenario: str
    record_path: Path
    out_path: Path
    xlabel: str = ""
    ylabel: str = ""
    overlays: tuple = ()
    bins: int | None = None  # histogram override; Freedman-Diaconis otherwise
    dpi: int = 150

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise RecordMismatchError(f"unknown scenario tag {self.scenario!r}")


def spec_for_record(record_path, out_path, bins=None, dpi=150) -> FigureSpec:
    """Build the default spec for a record, inferring the scenario tag."""
    payload = _load(record_path)
    scenario = payload.get("scenario")
    if scenario not in SCENARIOS:
        raise RecordMismatchError(f"record has unknown scenario {scenario!r}")
    xlabel, ylabel = _AXIS_LABELS[scenario]
    return FigureSpec(scenario=scenario, record_path=Path(record_path),
                      out_path=Path(out_path), xlabel=xlabel, ylabel=ylabel,
                      overlays=_OVERLAYS[scenario], bins=bins, dpi=dpi)


def render(spec: FigureSpec) -> Path:
    """Render the figure described by ``spec``; returns the image path."""
    payload = _load(spec.record_path)
    if payload.get("scenario") != spec.scenario:
        raise RecordMismatchError(
            f"record scenario {payload.get('scenario')!r} does not match "
            f"spec scenario {spec.scenario!r}")
    fig = build_figure(spec, payload)
    try:
        fig.savefig(spec.out_path, dpi=spec.dpi,
                    metadata={"Software": "l1cv-plots"})
    finally:
        plt.close(fig)
    return Path(spec.out_path)


def build_figure(spec: FigureSpec, payload: dict):
    """Assemble the matplotlib figure (separated from I/O for tests)."""
    builder = _BUILDERS[spec.scenario]
    fig, ax = plt.subplots(figsize=(7.2, 4.8))
    builder(ax, payload, spec)
    ax.set_xlabel(spec.xlabel or _AXIS_LABELS[spec.scenario][0])
    ax.set_ylabel(spec.ylabel or _AXIS_LABELS[spec.scenario][1])
    ax.set_title(f"{spec.scenario} (seed {payload.get('seed')})")
    ax.legend(loc="best")
    fig.tight_layout()
    return fig


def _load(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise RecordMismatchError(f"record file not found: {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise RecordMismatchError(f"record is not valid JSON: {exc}")


def _per_point(payload):
    points = payload["aggregates"]["per_point"]
    return [points[str(i)] for i in range(len(points))]


def _rmse_curves(ax, payload, spec):
    points = _per_point(payload)
    x = [p["sweep"] for p in points]
    styles = {"rmse_l1": ("L1 CV", "o-"), "rmse_l2": ("L2 CV", "s--"),
              "rmse_oracle": ("oracle", "d:")}
    for key, (label, style) in styles.items():
        y = [p[f"{key}_mean"] for p in points]
        err = [p[f"{key}_stderr"] for p in points]
        ax.errorbar(x, y, yerr=err, fmt=style, label=label, capsize=3)
    ax.set_yscale("log")


def _histogram_pdf(ax, payload, spec, samples_key):
    samples = np.asarray(payload["trials"][samples_key], dtype=float)
    agg = payload["aggregates"]
    bins = spec.bins or _freedman_diaconis(samples)
    ax.hist(samples, bins=bins, density=True, alpha=0.55,
            label=f"simulated ({samples.size} realizations)")
    mu, sd = agg["predicted_mean"], agg["predicted_std"]
    if sd > 0:
        grid = np.linspace(samples.min(), samples.max(), 400)
        pdf = np.exp(-0.5 * ((grid - mu) / sd) ** 2) / (sd * math.sqrt(2 * math.pi))
        ax.plot(grid, pdf, lw=2.0, label="predicted Gaussian pdf")


def _fig3(ax, payload, spec):
    _histogram_pdf(ax, payload, spec, "eps_cv")


def _fig5(ax, payload, spec):
    _histogram_pdf(ax, payload, spec, "delta_eps_cv")


def _fig4(ax, payload, spec):
    points = _per_point(payload)
    x = [p["m_cv"] for p in points]
    ax.plot(x, [p["upper_mean"] for p in points], "^-", label="mean upper bound")
    ax.plot(x, [p["lower_mean"] for p in points], "v-", label="mean lower bound")
    ax.plot(x, [p["true_mean"] for p in points], "o--", label="mean true error")
    ax.set_yscale("symlog", linthresh=1e-2)


def _fig6(ax, payload, spec):
    agg = payload["aggregates"]
    bins = agg["bins"]
    x = [0.0] + [b["drmse_center"] for b in bins]
    theory = [agg["zero_point_prob"]] + [b["theory_prob"] for b in bins]
    ax.plot(x, theory, "-", lw=2.0, label="theory")
    ax.plot([b["drmse_center"] for b in bins],
            [b["empirical_freq"] for b in bins], "o", label="empirical")
    ax.set_ylim(0.4, 1.05)


def _sweep(ax, payload, spec):
    rows = payload["trials"]["per_lambda"]
    lam = [r["lambda"] for r in rows]
    for key, style in (("eps_x", "o-"), ("eps_cv_l1", "s--"), ("eps_cv_l2", "d:")):
        ax.plot(lam, [r[key] for r in rows], style, label=key)
    ax.set_xscale("log")
    ax.set_yscale("log")


def _freedman_diaconis(samples: np.ndarray) -> int:
    n = samples.size
    if n < 2:
        return 1
    q75, q25 = np.percentile(samples, [75, 25])
    iqr = q75 - q25
    if iqr <= 0:
        return 10
    width = 2.0 * iqr / n ** (1.0 / 3.0)
    span = float(samples.max() - samples.min())
    return max(1, int(math.ceil(span / width)))


_BUILDERS = {"fig1": _rmse_curves, "fig2": _rmse_curves, "fig3": _fig3,
             "fig4": _fig4, "fig5": _fig5, "fig6": _fig6, "sweep": _sweep}
