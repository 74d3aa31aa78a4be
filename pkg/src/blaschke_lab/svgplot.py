"""Minimal deterministic SVG line plots (no external plotting dependency).

Byte-identical output for identical inputs: fixed canvas, fixed 6-significant
-digit coordinate formatting, no timestamps or generated ids.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 480
MARGIN = 56
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    return format(v, ".6g")


def _transform(vals, lo, hi, out_lo, out_hi, logscale):
    if logscale:
        lo, hi = math.log10(lo), math.log10(hi)
        vals = [math.log10(v) for v in vals]
    span = (hi - lo) or 1.0
    return [out_lo + (v - lo) / span * (out_hi - out_lo) for v in vals]


def line_plot_svg(curves, title="", xlabel="", ylabel="",
                  logx=False, logy=False, vlines=()):
    """Render labelled (xs, ys) curves to an SVG string.

    curves: iterable of (label, xs, ys).  Points with nonpositive coordinates
    are dropped on log axes.  vlines marks x-positions with dashed rules.
    """
    cleaned = []
    for label, xs, ys in curves:
        pts = [(x, y) for x, y in zip(xs, ys)
               if (not logx or x > 0) and (not logy or y > 0)]
        if pts:
            cleaned.append((label, pts))
    if not cleaned:
        raise ValueError("nothing to plot")
    all_x = [x for _, pts in cleaned for x, _ in pts]
    all_y = [y for _, pts in cleaned for _, y in pts]
    x_lo, x_hi = min(all_x), max(all_x)
    y_lo, y_hi = min(all_y), max(all_y)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="monospace" font-size="15">{title}</text>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 10}" text-anchor="middle" '
        f'font-family="monospace" font-size="12">{xlabel}</text>',
        f'<text x="16" y="{HEIGHT // 2}" text-anchor="middle" font-family="monospace" '
        f'font-size="12" transform="rotate(-90 16 {HEIGHT // 2})">{ylabel}</text>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#888"/>',
    ]
    for xv in vlines:
        if (not logx or xv > 0) and x_lo <= xv <= x_hi:
            (px,) = _transform([xv], x_lo, x_hi, MARGIN, WIDTH - MARGIN, logx)
            parts.append(f'<line x1="{_fmt(px)}" y1="{MARGIN}" x2="{_fmt(px)}" '
                         f'y2="{HEIGHT - MARGIN}" stroke="#bbb" stroke-dasharray="4 3"/>')
    for i, (label, pts) in enumerate(cleaned):
        color = PALETTE[i % len(PALETTE)]
        pxs = _transform([p[0] for p in pts], x_lo, x_hi, MARGIN, WIDTH - MARGIN, logx)
        pys = _transform([p[1] for p in pts], y_lo, y_hi, HEIGHT - MARGIN, MARGIN, logy)
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(pxs, pys))
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        parts.append(f'<text x="{WIDTH - MARGIN - 4}" y="{MARGIN + 16 + 14 * i}" '
                     f'text-anchor="end" font-family="monospace" font-size="11" '
                     f'fill="{color}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
