"""Static SVG rendering of CV-plots and mean-excess plots."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError
from .residual_cv import CvPlot, MeanExcessPlot

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=30, bottom=55)


def _nice_ticks(lo, hi, count=5):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    v = start
    while v <= hi + 1e-12 * step:
        ticks.append(v)
        v += step
    return ticks


class _Frame:
    def __init__(self, x, ys):
        finite = [np.asarray(y)[np.isfinite(y)] for y in ys if y is not None]
        lo = min(float(np.min(f)) for f in finite if f.size)
        hi = max(float(np.max(f)) for f in finite if f.size)
        pad = 0.05 * (hi - lo or abs(hi) or 1.0)
        self.ylo, self.yhi = lo - pad, hi + pad
        self.xlo, self.xhi = float(np.min(x)), float(np.max(x))
        if self.xhi == self.xlo:
            self.xhi = self.xlo + 1.0
        self.pw = WIDTH - MARGIN["left"] - MARGIN["right"]
        self.ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(self, x):
        return MARGIN["left"] + (np.asarray(x, float) - self.xlo) / (self.xhi - self.xlo) * self.pw

    def py(self, y):
        return MARGIN["top"] + (self.yhi - np.asarray(y, float)) / (self.yhi - self.ylo) * self.ph

    def polyline(self, x, y, **attrs):
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(self.px(x), self.py(y)))
        extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return f'<polyline fill="none" points="{pts}" {extra}/>'

    def axes(self, xlabel, ylabel):
        x0, y0 = MARGIN["left"], MARGIN["top"] + self.ph
        out = [
            f'<rect x="{x0}" y="{MARGIN["top"]}" width="{self.pw}" height="{self.ph}" '
            'fill="none" stroke="#000" stroke-width="1"/>'
        ]
        for t in _nice_ticks(self.xlo, self.xhi):
            px = float(self.px(t))
            out.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="#000"/>')
            out.append(
                f'<text x="{px:.2f}" y="{y0 + 18}" font-size="11" text-anchor="middle">{t:g}</text>'
            )
        for t in _nice_ticks(self.ylo, self.yhi):
            py = float(self.py(t))
            out.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="#000"/>')
            out.append(
                f'<text x="{x0 - 8}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{t:g}</text>'
            )
        out.append(
            f'<text x="{x0 + self.pw / 2:.1f}" y="{HEIGHT - 12}" font-size="13" '
            f'text-anchor="middle">{escape(xlabel)}</text>'
        )
        cy = MARGIN["top"] + self.ph / 2
        out.append(
            f'<text x="16" y="{cy:.1f}" font-size="13" text-anchor="middle" '
            f'transform="rotate(-90 16 {cy:.1f})">{escape(ylabel)}</text>'
        )
        return out


def _document(body, title):
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">',
            f"<title>{escape(title)}</title>",
            '<rect width="100%" height="100%" fill="#fff"/>',
            *body,
            "</svg>",
            "",
        ]
    )


def cv_plot_svg(plot: CvPlot, x_axis: str = "removed", title: str = "Residual CV plot", units: str = "") -> str:
    """SVG text for a CV-plot.

    The CV curve is solid, the reference ``c_xi`` dashed and the confidence
    band dotted.  ``x_axis`` is ``"removed"`` (observations below the
    threshold) or ``"threshold"``.
    """
    if len(plot) == 0:
        raise DomainError("cannot draw an empty plot")
    if x_axis == "removed":
        x, xlabel = plot.removed, "observations removed, k"
    elif x_axis == "threshold":
        x, xlabel = plot.thresholds, f"threshold{f' ({units})' if units else ''}"
    else:
        raise DomainError(f"x_axis must be 'removed' or 'threshold', got {x_axis!r}")
    frame = _Frame(x, [plot.cv, plot.band_low, plot.band_high,
                       None if plot.reference_cv is None else [plot.reference_cv]])
    body = frame.axes(xlabel, "residual CV (dimensionless)")
    body.append(frame.polyline(x, plot.cv, stroke="#000", stroke_width="1.2", id="cv"))
    if plot.reference_cv is not None:
        ref = np.full(2, plot.reference_cv)
        body.append(
            frame.polyline([x.min(), x.max()], ref, stroke="#000", stroke_dasharray="8,5", id="reference")
        )
    if plot.has_bands:
        for name, band in (("band-low", plot.band_low), ("band-high", plot.band_high)):
            body.append(frame.polyline(x, band, stroke="#000", stroke_dasharray="2,3", id=name))
    return _document(body, title)


def mean_excess_svg(plot: MeanExcessPlot, title: str = "Mean excess plot", units: str = "") -> str:
    if len(plot) == 0:
        raise DomainError("cannot draw an empty plot")
    frame = _Frame(plot.thresholds, [plot.mean_excess])
    u = f" ({units})" if units else ""
    body = frame.axes(f"threshold{u}", f"mean excess{u}")
    body.append(frame.polyline(plot.thresholds, plot.mean_excess, stroke="#000", id="mean-excess"))
    return _document(body, title)


def emit_svg(plot, path, **kwargs) -> None:
    """Write ``plot`` (CvPlot or MeanExcessPlot) to ``path`` as SVG 1.1."""
    text = cv_plot_svg(plot, **kwargs) if isinstance(plot, CvPlot) else mean_excess_svg(plot, **kwargs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
