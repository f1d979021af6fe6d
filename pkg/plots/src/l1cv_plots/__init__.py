"""Render figures from l1cv experiment records.

Purely presentational: everything plotted is read from the record JSON
emitted by the experiment harness; no statistics are computed here beyond
histogram binning and evaluating a stored Gaussian's density curve.
"""

from .render import FigureSpec, render, spec_for_record

__all__ = ["FigureSpec", "render", "spec_for_record"]

__version__ = "0.1.0"
