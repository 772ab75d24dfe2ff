"""Bare-bones SVG line plots (axes, ticks, up to a handful of series, legend)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .io import atomic_write_text

WIDTH, HEIGHT = 800, 420
MARGIN = dict(left=70, right=20, top=40, bottom=50)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")
MAX_POINTS = 4000


def _ticks(lo, hi, n=6):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * step:
        out.append(round(v, 12))
        v += step
    return out


def _thin(x, y):
    if x.size <= MAX_POINTS:
        return x, y
    idx = np.linspace(0, x.size - 1, MAX_POINTS).round().astype(int)
    return x[idx], y[idx]


def line_plot(path, series, title="", xlabel="", ylabel=""):
    """Write ``series`` (list of ``(label, x, y)``) as an SVG file."""
    xs = [np.asarray(s[1], float) for s in series]
    ys = [np.asarray(s[2], float) for s in series]
    finite = [y[np.isfinite(y)] for y in ys]
    x_lo = min(float(x.min()) for x in xs)
    x_hi = max(float(x.max()) for x in xs)
    y_lo = min(float(y.min()) for y in finite if y.size)
    y_hi = max(float(y.max()) for y in finite if y.size)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(v):
        return MARGIN["left"] + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return MARGIN["top"] + (y_hi - v) / (y_hi - y_lo) * ph

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
             f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
             f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
             f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
             'fill="none" stroke="black"/>']
    for v in _ticks(x_lo, x_hi):
        x = px(v)
        parts.append(f'<line x1="{x:.2f}" y1="{MARGIN["top"] + ph}" x2="{x:.2f}" '
                     f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{MARGIN["top"] + ph + 18}" '
                     f'text-anchor="middle">{v:g}</text>')
    for v in _ticks(y_lo, y_hi):
        y = py(v)
        parts.append(f'<line x1="{MARGIN["left"] - 5}" y1="{y:.2f}" x2="{MARGIN["left"]}" '
                     f'y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN["left"] - 8}" y="{y + 4:.2f}" '
                     f'text-anchor="end">{v:g}</text>')
    parts.append(f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">'
                 f'{escape(title)}</text>')
    parts.append(f'<text x="{MARGIN["left"] + pw / 2}" y="{HEIGHT - 10}" '
                 f'text-anchor="middle">{escape(xlabel)}</text>')
    parts.append(f'<text x="16" y="{MARGIN["top"] + ph / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2})">{escape(ylabel)}</text>')

    for i, ((label, _, _), x, y) in enumerate(zip(series, xs, ys)):
        color = COLORS[i % len(COLORS)]
        ok = np.isfinite(y)
        x, y = _thin(x[ok], y[ok])
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        dash = ' stroke-dasharray="6,3"' if i else ""
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2"{dash} '
                     f'points="{pts}"/>')
        ly = MARGIN["top"] + 16 + 16 * i
        lx = MARGIN["left"] + pw - 150
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                     f'stroke="{color}" stroke-width="2"{dash}/>')
        parts.append(f'<text x="{lx + 30}" y="{ly}">{escape(label)}</text>')
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")
    return path
