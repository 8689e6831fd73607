"""Static SVG rendering of efficiency curves: one panel per r, one line per alpha."""

from __future__ import annotations

import math
from collections import defaultdict
from xml.sax.saxutils import escape

from .efficiency import asymptotic_efficiency

Y_MIN, Y_MAX = 0.5, 1.05
PANEL_W, PANEL_H = 360, 300
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 56, 16, 36, 44
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _nice_ticks(lo, hi, target=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * step:
        ticks.append(first + k * step)
        k += 1
    return ticks


def _num(x):
    return f"{x:.2f}"


def render_efficiency_svg(records) -> str:
    """SVG 1.1 document for a list of :class:`EfficiencyRecord`.

    Axes are linear: ``n`` horizontally, relative efficiency on ``[0.5, 1.05]``
    vertically. A solid horizontal line marks ``1 - r^2/2`` in each panel.
    """
    panels = defaultdict(lambda: defaultdict(list))
    for rec in records:
        panels[rec.r][rec.alpha].append((rec.n, rec.rel_eff))
    rs = sorted(panels)
    width = max(1, len(rs)) * PANEL_W
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{PANEL_H}" '
        f'viewBox="0 0 {width} {PANEL_H}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{PANEL_H}" fill="white"/>',
    ]
    for idx, r in enumerate(rs):
        curves = panels[r]
        ns = [n for pts in curves.values() for n, _ in pts]
        x_lo, x_hi = min(ns), max(ns)
        if x_lo == x_hi:
            x_lo, x_hi = x_lo - 1, x_hi + 1
        ox = idx * PANEL_W + MARGIN_L
        pw = PANEL_W - MARGIN_L - MARGIN_R
        ph = PANEL_H - MARGIN_T - MARGIN_B

        def sx(n):
            return ox + (n - x_lo) / (x_hi - x_lo) * pw

        def sy(v):
            return MARGIN_T + (Y_MAX - v) / (Y_MAX - Y_MIN) * ph

        out.append(f'<g id="panel-{idx}">')
        out.append(f'<text x="{_num(ox + pw / 2)}" y="20" text-anchor="middle" font-size="13">r = {r:g}</text>')
        out.append(f'<rect x="{_num(ox)}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')
        for t in _nice_ticks(x_lo, x_hi):
            x = sx(t)
            out.append(f'<line x1="{_num(x)}" y1="{_num(MARGIN_T + ph)}" x2="{_num(x)}" y2="{_num(MARGIN_T + ph + 4)}" stroke="black"/>')
            out.append(f'<text x="{_num(x)}" y="{_num(MARGIN_T + ph + 16)}" text-anchor="middle">{t:g}</text>')
        for t in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0):
            y = sy(t)
            out.append(f'<line x1="{_num(ox - 4)}" y1="{_num(y)}" x2="{_num(ox)}" y2="{_num(y)}" stroke="black"/>')
            out.append(f'<text x="{_num(ox - 6)}" y="{_num(y + 4)}" text-anchor="end">{t:.1f}</text>')
        out.append(f'<text x="{_num(ox + pw / 2)}" y="{PANEL_H - 8}" text-anchor="middle">n</text>')
        out.append(f'<text x="{_num(ox - 40)}" y="{_num(MARGIN_T + ph / 2)}" text-anchor="middle" '
                   f'transform="rotate(-90 {_num(ox - 40)} {_num(MARGIN_T + ph / 2)})">relative efficiency</text>')
        ya = sy(asymptotic_efficiency(r))
        out.append(f'<line class="asymptote" x1="{_num(ox)}" y1="{_num(ya)}" x2="{_num(ox + pw)}" y2="{_num(ya)}" '
                   f'stroke="black" stroke-width="1.5"/>')
        for k, alpha in enumerate(sorted(curves)):
            pts = sorted(curves[alpha])
            color = COLORS[k % len(COLORS)]
            if len(pts) == 1:
                n, v = pts[0]
                out.append(f'<circle class="curve" cx="{_num(sx(n))}" cy="{_num(sy(v))}" r="3" fill="{color}"/>')
            else:
                coords = " ".join(f"{_num(sx(n))},{_num(sy(v))}" for n, v in pts)
                out.append(f'<polyline class="curve" points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            ly = MARGIN_T + ph - 12 - 14 * k
            out.append(f'<line x1="{_num(ox + pw - 70)}" y1="{ly}" x2="{_num(ox + pw - 52)}" y2="{ly}" stroke="{color}" stroke-width="1.5"/>')
            out.append(f'<text x="{_num(ox + pw - 48)}" y="{ly + 4}">{escape(f"alpha = {alpha:g}")}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
