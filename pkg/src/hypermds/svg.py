"""Static SVG output: disk configurations with trajectories, and x/y curves.

Coordinates are written with fixed precision so identical inputs give
identical bytes.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

SIZE = 480
MARGIN = 20


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _header(width, height):
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]


def disk_svg(final, initial=None, path=None, title: str | None = None) -> str:
    """Unit circle with the final points (filled) and optional start points (hollow).

    ``path`` is a (T, n) array of configurations; each point's trajectory is
    drawn as a polyline.
    """
    radius = (SIZE - 2 * MARGIN) / 2
    cx = cy = SIZE / 2

    def xy(z):
        # y axis points up
        return cx + radius * z.real, cy - radius * z.imag

    out = _header(SIZE, SIZE)
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(radius)}" fill="none" stroke="black" stroke-width="1"/>')
    if path is not None and len(path) > 1:
        path = np.asarray(path)
        for j in range(path.shape[1]):
            pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in map(xy, path[:, j]))
            out.append(f'<polyline class="trajectory" points="{pts}" fill="none" stroke="gray" stroke-width="0.7"/>')
    if initial is not None:
        for z in np.asarray(initial):
            x, y = xy(z)
            out.append(f'<circle class="initial" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="white" stroke="black" stroke-width="1"/>')
    for z in np.asarray(final):
        x, y = xy(z)
        out.append(f'<circle class="point" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _ticks(lo, hi, log):
    if log:
        return [10.0 ** k for k in range(math.floor(lo), math.ceil(hi) + 1)]
    step = 10 ** math.floor(math.log10(hi - lo)) if hi > lo else 1.0
    start = math.ceil(lo / step) * step
    return [start + i * step for i in range(int((hi - start) / step + 1e-9) + 1)]


def curve_svg(x, y, logx: bool = False, logy: bool = False, xlabel: str = "x", ylabel: str = "y",
              title: str | None = None) -> str:
    """Polyline plus markers of y against x, optionally on log axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size == 0:
        raise ValueError("x and y must be nonempty and the same length")
    if logx and np.any(x <= 0) or logy and np.any(y <= 0):
        raise ValueError("log axis needs positive values")
    tx = np.log10(x) if logx else x
    ty = np.log10(y) if logy else y
    w, h, left, bottom = 560, 400, 70, 50

    def span(v):
        lo, hi = float(v.min()), float(v.max())
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        return lo, hi

    (x0, x1), (y0, y1) = span(tx), span(ty)

    def px(v):
        return left + (v - x0) / (x1 - x0) * (w - left - MARGIN)

    def py(v):
        return h - bottom - (v - y0) / (y1 - y0) * (h - bottom - MARGIN)

    out = _header(w, h)
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<line x1="{left}" y1="{h - bottom}" x2="{w - MARGIN}" y2="{h - bottom}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{h - bottom}" x2="{left}" y2="{MARGIN}" stroke="black"/>')
    for t in _ticks(x0, x1, logx):
        v = math.log10(t) if logx else t
        if x0 - 1e-12 <= v <= x1 + 1e-12:
            out.append(f'<line x1="{_f(px(v))}" y1="{h - bottom}" x2="{_f(px(v))}" y2="{h - bottom + 5}" stroke="black"/>')
            out.append(f'<text x="{_f(px(v))}" y="{h - bottom + 18}" font-size="11" text-anchor="middle">{t:g}</text>')
    for t in _ticks(y0, y1, logy):
        v = math.log10(t) if logy else t
        if y0 - 1e-12 <= v <= y1 + 1e-12:
            out.append(f'<line x1="{left - 5}" y1="{_f(py(v))}" x2="{left}" y2="{_f(py(v))}" stroke="black"/>')
            out.append(f'<text x="{left - 8}" y="{_f(py(v) + 4)}" font-size="11" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{(w + left) / 2:g}" y="{h - 10}" font-size="12" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="15" y="{(h - bottom) / 2:g}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 15 {(h - bottom) / 2:g})">{escape(ylabel)}</text>')
    pts = " ".join(f"{_f(px(a))},{_f(py(b))}" for a, b in zip(tx, ty))
    out.append(f'<polyline class="curve" points="{pts}" fill="none" stroke="black" stroke-width="1.2"/>')
    for a, b in zip(tx, ty):
        out.append(f'<circle class="marker" cx="{_f(px(a))}" cy="{_f(py(b))}" r="2.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
