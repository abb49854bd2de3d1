"""
Static SVG figures: the phase-boundary diagram (alpha_c against rho for the
three norms, with an optional worst-case inset) and the finite-size plot
(alpha_c(N) against 1/N with its quadratic fit and intercept).
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union
from xml.sax.saxutils import escape, quoteattr

import numpy as np
from loguru import logger

logger = logger.bind(name="Plots")

Point = Tuple[float, float]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f"]
_STYLES = ("line", "dashed", "markers", "intercept")


@dataclass
class Series:
    """One labelled data series; style is line, dashed, markers or intercept"""
    label: str
    points: List[Point]
    style: str = "line"
    color: Optional[str] = None
    errors: Optional[List[float]] = None

    def __post_init__(self):
        if not self.points:
            raise ValueError(f"series '{self.label}' has no points")
        if self.style not in _STYLES:
            raise ValueError(f"unknown series style '{self.style}'")
        if self.errors is not None and len(self.errors) != len(self.points):
            raise ValueError(f"series '{self.label}': {len(self.errors)} error bars for {len(self.points)} points")


@dataclass
class PlotSpec:
    """Axes, series and destination of one figure"""
    series: List[Series]
    x_label: str
    y_label: str
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]
    output_path: Optional[Path] = None
    title: str = ""
    inset: Optional["PlotSpec"] = None
    width: int = 640
    height: int = 480

    def __post_init__(self):
        if not self.series:
            raise ValueError("a plot needs at least one series")
        for lo, hi in (self.x_range, self.y_range):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"axis range must be finite and increasing, got ({lo}, {hi})")


class _Frame:
    """Maps data coordinates into a pixel box"""

    def __init__(self, spec: PlotSpec, left: float, top: float, width: float, height: float):
        self.spec = spec
        self.left, self.top, self.width, self.height = left, top, width, height

    def x(self, value: float) -> float:
        lo, hi = self.spec.x_range
        return self.left + (value - lo) / (hi - lo) * self.width

    def y(self, value: float) -> float:
        lo, hi = self.spec.y_range
        return self.top + self.height - (value - lo) / (hi - lo) * self.height


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _ticks(lo: float, hi: float, count: int = 5) -> List[float]:
    raw = (hi - lo) / count
    magnitude = 10 ** math.floor(math.log10(raw))
    step = min((m * magnitude for m in (1, 2, 2.5, 5, 10) if m * magnitude >= raw), default=raw)
    start = math.ceil(lo / step - 1e-9) * step
    return [round(t, 12) for t in np.arange(start, hi + step * 1e-6, step)]


def _axes(frame: _Frame, font_size: int) -> List[str]:
    spec = frame.spec
    bottom = frame.top + frame.height
    parts = [
        f'<rect x="{_fmt(frame.left)}" y="{_fmt(frame.top)}" width="{_fmt(frame.width)}" '
        f'height="{_fmt(frame.height)}" fill="white" stroke="black"/>'
    ]
    for tick in _ticks(*spec.x_range):
        x = frame.x(tick)
        parts.append(f'<line x1="{_fmt(x)}" y1="{_fmt(bottom)}" x2="{_fmt(x)}" y2="{_fmt(bottom + 4)}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{_fmt(bottom + 4 + font_size)}" font-size="{font_size}" '
                     f'text-anchor="middle">{tick:g}</text>')
    for tick in _ticks(*spec.y_range):
        y = frame.y(tick)
        parts.append(f'<line x1="{_fmt(frame.left - 4)}" y1="{_fmt(y)}" x2="{_fmt(frame.left)}" y2="{_fmt(y)}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(frame.left - 6)}" y="{_fmt(y + font_size / 3)}" font-size="{font_size}" '
                     f'text-anchor="end">{tick:g}</text>')
    parts.append(f'<text x="{_fmt(frame.left + frame.width / 2)}" y="{_fmt(bottom + 2 * font_size + 8)}" '
                 f'font-size="{font_size}" text-anchor="middle">{escape(spec.x_label)}</text>')
    parts.append(f'<text x="{_fmt(frame.left - 3 * font_size - 6)}" y="{_fmt(frame.top + frame.height / 2)}" '
                 f'font-size="{font_size}" text-anchor="middle" transform="rotate(-90 '
                 f'{_fmt(frame.left - 3 * font_size - 6)} {_fmt(frame.top + frame.height / 2)})">'
                 f'{escape(spec.y_label)}</text>')
    return parts


def _series(frame: _Frame, series: Series, color: str) -> List[str]:
    label = quoteattr(series.label)
    if series.style in ("line", "dashed"):
        coords = " ".join(f"{_fmt(frame.x(x))},{_fmt(frame.y(y))}" for x, y in series.points)
        dash = ' stroke-dasharray="6,4"' if series.style == "dashed" else ""
        return [f'<polyline class="curve" data-label={label} points="{coords}" fill="none" '
                f'stroke="{color}" stroke-width="2"{dash}/>']

    parts = [f'<g class="{series.style}" data-label={label}>']
    for index, (x, y) in enumerate(series.points):
        cx, cy = frame.x(x), frame.y(y)
        if series.errors is not None:
            spread = series.errors[index]
            parts.append(f'<line x1="{_fmt(cx)}" y1="{_fmt(frame.y(y - spread))}" x2="{_fmt(cx)}" '
                         f'y2="{_fmt(frame.y(y + spread))}" stroke="{color}"/>')
        radius = 6 if series.style == "intercept" else 3.5
        fill = "none" if series.style == "intercept" else color
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{radius}" fill="{fill}" stroke="{color}" '
                     f'stroke-width="2" data-x="{x!r}" data-y="{y!r}"/>')
    parts.append("</g>")
    return parts


def _legend(frame: _Frame, series: Sequence[Series], colors: Sequence[str], font_size: int) -> List[str]:
    parts = []
    x = frame.left + 10
    for index, (item, color) in enumerate(zip(series, colors)):
        y = frame.top + 14 + index * (font_size + 6)
        parts.append(f'<line x1="{_fmt(x)}" y1="{_fmt(y - font_size / 3)}" x2="{_fmt(x + 20)}" '
                     f'y2="{_fmt(y - font_size / 3)}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{_fmt(x + 26)}" y="{_fmt(y)}" font-size="{font_size}">{escape(item.label)}</text>')
    return parts


def _panel(frame: _Frame, font_size: int, clip_id: str) -> List[str]:
    spec = frame.spec
    colors = [s.color or _PALETTE[i % len(_PALETTE)] for i, s in enumerate(spec.series)]
    parts = _axes(frame, font_size)
    parts.append(f'<clipPath id="{clip_id}"><rect x="{_fmt(frame.left)}" y="{_fmt(frame.top)}" '
                 f'width="{_fmt(frame.width)}" height="{_fmt(frame.height)}"/></clipPath>')
    parts.append(f'<g clip-path="url(#{clip_id})">')
    for item, color in zip(spec.series, colors):
        parts += _series(frame, item, color)
    parts.append("</g>")
    parts += _legend(frame, spec.series, colors, font_size)
    return parts


def render_svg(spec: PlotSpec) -> str:
    """SVG 1.1 document for a plot and its optional inset"""
    margin_left, margin_top, margin_right, margin_bottom = 70, 40, 20, 60
    frame = _Frame(spec, margin_left, margin_top, spec.width - margin_left - margin_right,
                   spec.height - margin_top - margin_bottom)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}" font-family="sans-serif">',
        f'<rect width="{spec.width}" height="{spec.height}" fill="white"/>',
    ]
    if spec.title:
        parts.append(f'<text x="{spec.width / 2:.2f}" y="22" font-size="15" text-anchor="middle">'
                     f'{escape(spec.title)}</text>')
    parts += _panel(frame, 12, "main")

    if spec.inset is not None:
        # lower-right quarter of the main frame
        inset = _Frame(spec.inset, frame.left + frame.width * 0.58, frame.top + frame.height * 0.45,
                       frame.width * 0.38, frame.height * 0.38)
        parts.append('<g class="inset">')
        parts += _panel(inset, 9, "inset")
        parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_plot(spec: PlotSpec, path: Optional[Union[str, Path]] = None) -> Path:
    """Render and write; returns the path written"""
    target = Path(path or spec.output_path or "plot.svg")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render_svg(spec), encoding="utf-8")
    logger.info(f"Wrote {len(spec.series)}-series figure to {target}")
    return target


def phase_diagram(curves: Sequence[Tuple[str, List[Point]]],
                  worst_case: Optional[List[Point]] = None,
                  reference: Optional[List[Point]] = None) -> PlotSpec:
    """
    alpha_c against rho for each (label, points) curve. The worst-case
    curve, when given, goes to an inset alongside `reference` (the L1 curve
    over the same rho range).
    """
    series = [Series(label=label, points=points) for label, points in curves]
    inset = None
    if worst_case:
        inset_series = [Series(label="L1 worst case", points=worst_case, style="dashed", color=_PALETTE[3])]
        if reference:
            rho_max = max(rho for rho, _ in worst_case)
            clipped = [(rho, alpha) for rho, alpha in reference if rho <= rho_max]
            if clipped:
                inset_series.insert(0, Series(label="L1 typical", points=clipped, color=_PALETTE[1]))
        x_hi = max(rho for rho, _ in worst_case)
        y_hi = max(alpha for _, alpha in worst_case)
        inset = PlotSpec(series=inset_series, x_label="rho", y_label="alpha",
                         x_range=(0.0, x_hi * 1.05), y_range=(0.0, y_hi * 1.05))
    return PlotSpec(series=series, x_label="rho", y_label="alpha_c", x_range=(0.0, 1.0),
                    y_range=(0.0, 1.05), title="Typical reconstruction limit", inset=inset)


def finite_size_plot(points: List[Point], errors: Optional[List[float]] = None,
                     coefficients: Optional[Sequence[float]] = None,
                     theory: Optional[float] = None) -> PlotSpec:
    """alpha_c(N) against 1/N, with the quadratic fit and its intercept"""
    series = [Series(label="alpha_c(N)", points=points, style="markers", color=_PALETTE[0], errors=errors)]
    x_hi = max(x for x, _ in points) * 1.1
    ys = [y for _, y in points]

    if coefficients is not None:
        c0, c1, c2 = coefficients
        grid = np.linspace(0.0, x_hi, 50)
        fitted = [(float(x), float(c0 + c1 * x + c2 * x * x)) for x in grid]
        series.append(Series(label="quadratic fit", points=fitted, color=_PALETTE[1]))
        series.append(Series(label=f"intercept {c0:.5f}", points=[(0.0, float(c0))], style="intercept",
                             color=_PALETTE[1]))
        ys += [y for _, y in fitted]
    if theory is not None:
        series.append(Series(label=f"replica {theory:.5f}", points=[(0.0, theory), (x_hi, theory)],
                             style="dashed", color=_PALETTE[2]))
        ys.append(theory)

    spread = (errors and max(errors)) or 0.0
    lo, hi = min(ys) - spread, max(ys) + spread
    pad = max(0.05 * (hi - lo), 1e-3)
    return PlotSpec(series=series, x_label="1/N", y_label="alpha_c(N)", x_range=(0.0, x_hi),
                    y_range=(lo - pad, hi + pad), title="Finite-size critical rate")
