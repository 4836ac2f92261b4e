import math
import re
from fractions import Fraction

import pytest

from scgd.affreg import regular_ngon
from scgd.errors import PreconditionError
from scgd.geometry import Point, angle_distance, dual
from scgd.svg import render_svg

from conftest import P

LINE = re.compile(r'<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"/>')


def test_counts():
    assert render_svg(regular_ngon(7).points()).count("<circle") == 7
    assert render_svg(regular_ngon(7).points()).count("<line") == 21
    sq = render_svg([P(0, 0), P(1, 0), P(1, 1), P(0, 1)])
    assert sq.count("<circle") == 4 and sq.count("<line") == 6


def test_deterministic_bytes():
    pts = regular_ngon(9).points()
    assert render_svg(pts) == render_svg(list(pts))


def test_segment_directions_preserved():
    pts = [P(1, -1), P(-1, 0), P(0, 0), P(0, 1)]
    text = render_svg(pts)
    pairs = [(p, q) for i, p in enumerate(pts) for q in pts[i + 1 :]]
    for (p, q), m in zip(pairs, LINE.finditer(text)):
        x1, y1, x2, y2 = map(float, m.groups())
        drawn = math.atan2(-(y2 - y1), x2 - x1)  # screen y points down
        true = math.atan2(float(q.y - p.y), float(q.x - p.x))
        assert angle_distance(drawn, true) < 1e-5


def test_figure_quadruples_render():
    e = [P(1, -1), P(-1, 0), P(0, 0), P(0, 1)]
    a = [P(-2, 2), P(-1, 0), P(0, 0), P(0, 1)]
    for pts in (e, dual(e), a):
        assert render_svg(pts).count("<line") == 6


def test_single_point_and_empty():
    assert render_svg([P(3, 4)]).count("<circle") == 1
    with pytest.raises(PreconditionError):
        render_svg([])
