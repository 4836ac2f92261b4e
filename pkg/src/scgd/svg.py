"""Straight-line drawings of the complete graph on a point set, as SVG 1.1."""
from __future__ import annotations

import itertools
from typing import Sequence

from .errors import PreconditionError
from .geometry import Point

CANVAS = 400.0
MARGIN = 20.0

HEADER = """<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">
"""


def _f(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(points: Sequence[Point]) -> str:
    """One circle per point and one segment per pair, uniformly scaled with y pointing up.

    The same scale factor is used on both axes and only the y sign flips, so
    every drawn segment keeps the slope of its pair.
    """
    pts = [(float(p.x), float(p.y)) for p in points]
    if not pts:
        raise PreconditionError("nothing to render")
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    scale = (CANVAS - 2 * MARGIN) / span if span > 0 else 1.0
    w = (max(xs) - min(xs)) * scale + 2 * MARGIN
    h = (max(ys) - min(ys)) * scale + 2 * MARGIN

    def tx(x):
        return (x - min(xs)) * scale + MARGIN

    def ty(y):
        return (max(ys) - y) * scale + MARGIN

    out = [HEADER.format(w=_f(w), h=_f(h))]
    out.append('<g stroke="#1f4e79" stroke-width="1" fill="none">\n')
    for (x1, y1), (x2, y2) in itertools.combinations(pts, 2):
        out.append(f'<line x1="{_f(tx(x1))}" y1="{_f(ty(y1))}" x2="{_f(tx(x2))}" y2="{_f(ty(y2))}"/>\n')
    out.append("</g>\n")
    out.append('<g fill="#c00000">\n')
    for x, y in pts:
        out.append(f'<circle cx="{_f(tx(x))}" cy="{_f(ty(y))}" r="4"/>\n')
    out.append("</g>\n</svg>\n")
    return "".join(out)


def write_svg(points: Sequence[Point], path) -> str:
    text = render_svg(points)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text
