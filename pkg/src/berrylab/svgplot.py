"""Tiny log-log line plot writer producing standalone SVG text."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["loglog_svg"]

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _ticks(lo: float, hi: float) -> list[int]:
    return list(range(math.floor(lo), math.ceil(hi) + 1))


def loglog_svg(
    series: dict[str, tuple[list[float], list[float]]],
    title: str = "",
    xlabel: str = "N",
    ylabel: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    """Render named (x, y) polylines on log10 axes. Non-positive points are skipped."""
    pts = {
        name: [(math.log10(x), math.log10(y)) for x, y in zip(xs, ys) if x > 0 and y is not None and y > 0]
        for name, (xs, ys) in series.items()
    }
    allp = [p for v in pts.values() for p in v]
    if not allp:
        raise ValueError("nothing to plot")
    x0, x1 = min(p[0] for p in allp), max(p[0] for p in allp)
    y0, y1 = min(p[1] for p in allp), max(p[1] for p in allp)
    if x1 - x0 < 1e-9:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-9:
        y0, y1 = y0 - 0.5, y1 + 0.5
    ml, mr, mt, mb = 70, 170, 40, 50
    pw, ph = width - ml - mr, height - mt - mb

    def X(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def Y(v):
        return mt + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    for t in _ticks(x0, x1):
        if x0 - 1e-9 <= t <= x1 + 1e-9:
            out.append(f'<line x1="{X(t):.2f}" y1="{mt}" x2="{X(t):.2f}" y2="{mt + ph}" stroke="#ddd"/>')
            out.append(f'<text x="{X(t):.2f}" y="{mt + ph + 16}" text-anchor="middle">1e{t}</text>')
    for t in _ticks(y0, y1):
        if y0 - 1e-9 <= t <= y1 + 1e-9:
            out.append(f'<line x1="{ml}" y1="{Y(t):.2f}" x2="{ml + pw}" y2="{Y(t):.2f}" stroke="#ddd"/>')
            out.append(f'<text x="{ml - 6}" y="{Y(t) + 4:.2f}" text-anchor="end">1e{t}</text>')
    for i, (name, p) in enumerate(pts.items()):
        color = _COLORS[i % len(_COLORS)]
        if p:
            path = " ".join(f"{X(a):.2f},{Y(b):.2f}" for a, b in p)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.8"/>')
            out.extend(f'<circle cx="{X(a):.2f}" cy="{Y(b):.2f}" r="2.5" fill="{color}"/>' for a, b in p)
        ly = mt + 14 + 18 * i
        out.append(f'<line x1="{ml + pw + 12}" y1="{ly - 4}" x2="{ml + pw + 32}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 38}" y="{ly}">{escape(name)}</text>')
    if title:
        out.append(f'<text x="{ml + pw / 2:.1f}" y="{mt - 14}" text-anchor="middle" font-size="14">{escape(title)}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(
            f'<text x="16" y="{mt + ph / 2:.1f}" text-anchor="middle" '
            f'transform="rotate(-90 16 {mt + ph / 2:.1f})">{escape(ylabel)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
