import itertools
from fractions import Fraction

import pytest

from scgd.errors import PreconditionError
from scgd.generic import (
    PAIRS,
    build_generic,
    check_slope_generic,
    classify_quadruple,
    iter_assignments,
    realize_quadruple,
)
from scgd.geometry import Point, Slope, dual, embeds, find_homothety, is_simple, slope_of, slope_set

from conftest import P

NONGENERIC = [P(-2, 2), P(-1, 0), P(0, 0), P(0, 1)]


def pair_slopes(e):
    return [slope_of(e[i], e[j]) for i, j in PAIRS]


def test_build_generic_points():
    assert build_generic(1).points == (Point(50, 2500),)
    g = build_generic(2)
    assert g.points == (Point(50, 2500), Point(2500, 6250000))
    assert build_generic(3).slope(0, 2) == 50 + 50**5 == 312500050
    assert slope_of(*g.points).value == 2550


def test_generic_points_on_parabola_with_distinct_slopes():
    from scgd.geometry import has_distinct_slopes

    g = build_generic(6)
    assert all(p.y == p.x**2 for p in g.points)
    assert has_distinct_slopes(g.points)
    for i, j in itertools.combinations(range(6), 2):
        assert slope_of(g.points[i], g.points[j]).value == g.slope(i, j)


def test_base_warning(caplog):
    build_generic(3, base=10)
    assert "only established" in caplog.text


def test_realize_trapezoid():
    trap = (P(0, 0), P(4, 0), P(3, 1), P(1, 1))
    e = realize_quadruple(pair_slopes(trap))
    assert e is not None
    assert find_homothety(e, trap) is not None


def test_realize_rejects_nonzero_q():
    m = [Slope.from_value(v) for v in (1, 2, 3, 4, 5, 7)]
    assert realize_quadruple(m) is None


def test_realize_shared_vertex_repeat():
    m = [Slope.from_value(v) for v in (1, 1, 3, 4, 5, 7)]
    with pytest.raises(PreconditionError):
        realize_quadruple(m)


def test_iter_assignments_respects_conflicts():
    seen = list(iter_assignments(6))
    assert len(seen) == len(set(seen))
    for a in seen:
        # positions sharing a vertex never repeat
        for (i, p), (j, q) in itertools.combinations(enumerate(PAIRS), 2):
            if set(p) & set(q):
                assert a[i] != a[j]


def test_nongeneric_example():
    res = check_slope_generic(NONGENERIC)
    assert not res.generic
    e = res.counterexample
    assert is_simple(e)
    assert set(slope_set(e)) <= set(slope_set(NONGENERIC))
    assert embeds(e, NONGENERIC) is None and embeds(dual(e), NONGENERIC) is None
    # the book example is among the counterexamples up to homothety
    book = (P(1, -1), P(-1, 0), P(0, 0), P(0, 1))
    every = check_slope_generic(NONGENERIC, find_all=True).counterexamples
    assert any(
        find_homothety([c[i] for i in perm], book) is not None
        for c in every
        for perm in itertools.permutations(range(4))
    ) or any(
        find_homothety([dual(c)[i] for i in perm], book) is not None
        for c in every
        for perm in itertools.permutations(range(4))
    )


def test_triangle_is_vacuously_generic():
    assert check_slope_generic([P(0, 0), P(1, 0), P(0, 1)]).generic


def test_requires_distinct_slopes():
    with pytest.raises(PreconditionError):
        check_slope_generic([P(0, 0), P(1, 0), P(1, 1), P(0, 1)])


def unpruned_verdict(pts):
    """Every shared-vertex-distinct assignment, no polynomial filter and no orbit reduction."""
    slopes = list(slope_set(pts))
    for idx in iter_assignments(len(slopes)):
        e = realize_quadruple([slopes[i] for i in idx])
        if e is None:
            continue
        if embeds(e, pts) is None and embeds(dual(e), pts) is None:
            return False
    return True


@pytest.mark.parametrize("pts", [build_generic(4).points, NONGENERIC, (P(0, 0), P(1, 3), P(4, 1), P(2, 7))])
def test_checker_agrees_with_unpruned_search(pts):
    assert check_slope_generic(pts).generic == unpruned_verdict(pts)


def test_generic_four_classification():
    g = build_generic(4)
    res = check_slope_generic(g.points)
    assert res.generic
    assert res.realized
    for _, e in res.realized:
        assert len(classify_quadruple(pair_slopes(e), g)) == 1
