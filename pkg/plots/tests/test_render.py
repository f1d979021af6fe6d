import json
from pathlib import Path

import pytest

from l1cv_plots import FigureSpec, render, spec_for_record
from l1cv_plots.cli import main
from l1cv_plots.render import RecordMismatchError, _load, build_figure

DATA = Path(__file__).parent / "data"
ALL_SCENARIOS = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "sweep"]


def record_path(scenario):
    return DATA / f"{scenario}_5.json"


@pytest.mark.parametrize("scenario", ALL_SCENARIOS)
def test_renders_every_scenario(scenario, tmp_path):
    out = tmp_path / f"{scenario}.png"
    spec = spec_for_record(record_path(scenario), out)
    path = render(spec)
    assert path.exists() and path.stat().st_size > 5000


@pytest.mark.parametrize("scenario", ["fig3", "fig5"])
def test_histogram_and_pdf_layers_present(scenario, tmp_path):
    # smoke-level overlay check: both the histogram patches and the pdf
    # line must exist on the axes
    spec = spec_for_record(record_path(scenario), tmp_path / "x.png")
    fig = build_figure(spec, _load(spec.record_path))
    ax = fig.axes[0]
    assert len(ax.patches) > 0, "histogram layer missing"
    assert len(ax.lines) >= 1, "pdf overlay missing"
    labels = [line.get_label() for line in ax.lines]
    assert any("pdf" in lab for lab in labels)


def test_fig4_has_three_curves(tmp_path):
    spec = spec_for_record(record_path("fig4"), tmp_path / "x.png")
    fig = build_figure(spec, _load(spec.record_path))
    labels = [line.get_label() for line in fig.axes[0].lines]
    assert any("upper" in lab for lab in labels)
    assert any("lower" in lab for lab in labels)
    assert any("true" in lab for lab in labels)


@pytest.mark.parametrize("scenario", ["fig1", "fig2"])
def test_rmse_figures_have_three_criteria(scenario, tmp_path):
    spec = spec_for_record(record_path(scenario), tmp_path / "x.png")
    fig = build_figure(spec, _load(spec.record_path))
    _, labels = fig.axes[0].get_legend_handles_labels()
    assert {"L1 CV", "L2 CV", "oracle"} <= set(labels)


def test_fig6_has_theory_and_empirical(tmp_path):
    spec = spec_for_record(record_path("fig6"), tmp_path / "x.png")
    fig = build_figure(spec, _load(spec.record_path))
    labels = {line.get_label() for line in fig.axes[0].lines}
    assert {"theory", "empirical"} <= labels


def test_single_point_record_renders(tmp_path):
    # degenerate sweep: one point must plot without error
    payload = json.loads(record_path("fig4").read_text())
    payload["aggregates"]["per_point"] = {"0": payload["aggregates"]["per_point"]["0"]}
    single = tmp_path / "fig4_single.json"
    single.write_text(json.dumps(payload))
    out = render(spec_for_record(single, tmp_path / "single.png"))
    assert out.exists()


def test_rerender_is_byte_identical(tmp_path):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    render(spec_for_record(record_path("fig3"), a))
    render(spec_for_record(record_path("fig3"), b))
    assert a.read_bytes() == b.read_bytes()


def test_scenario_mismatch_rejected(tmp_path):
    spec = FigureSpec(scenario="fig5", record_path=record_path("fig3"),
                      out_path=tmp_path / "x.png")
    with pytest.raises(RecordMismatchError):
        render(spec)


def test_missing_record_rejected(tmp_path):
    with pytest.raises(RecordMismatchError):
        spec_for_record(tmp_path / "absent.json", tmp_path / "x.png")


def test_bins_override(tmp_path):
    spec = spec_for_record(record_path("fig3"), tmp_path / "x.png", bins=5)
    fig = build_figure(spec, _load(spec.record_path))
    assert len(fig.axes[0].patches) == 5


class TestCli:
    def test_success(self, tmp_path, capsys):
        out = tmp_path / "fig5.png"
        assert main(["--record", str(record_path("fig5")), "--out", str(out)]) == 0
        assert out.exists()

    def test_missing_record_exits_nonzero(self, tmp_path, capsys):
        code = main(["--record", str(tmp_path / "no.json"),
                     "--out", str(tmp_path / "x.png")])
        assert code == 1
        assert "error" in capsys.readouterr().err
