import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scgd.affreg import (
    AffRegPolygon,
    affine_image,
    affine_order,
    expected_boundary_indices,
    four_points_query,
    four_slopes_query,
    polygon_slopes_within,
    profile_is_consistent,
    quad_from_slopes,
    random_affine,
    random_affreg,
    regular_ngon,
    slope_profile,
)
from scgd.errors import PreconditionError
from scgd.geometry import AffineMap, Point, Slope, SlopeSet, angle_distance, slope_of

from conftest import P


def all_pair_angles(v):
    """Directions of every segment, folded to [-pi/2, pi/2), as an oracle slope set."""
    out = []
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out.append(math.atan2(v[j][1] - v[i][1], v[j][0] - v[i][0]))
    return out


def distinct_directions(angles, tol=1e-8):
    reps = []
    for a in angles:
        if not any(angle_distance(a, b) < tol for b in reps):
            reps.append(a)
    return reps


def np_order(coef, limit, tol=1e-6):
    a, b, c, d, e, f = coef
    m = np.array([[a, b, e], [c, d, f], [0, 0, 1.0]])
    acc = np.eye(3)
    for n in range(1, limit + 1):
        acc = acc @ m
        if np.max(np.abs(acc - np.eye(3))) < tol:
            return n
    return None


def test_square():
    sq = regular_ngon(4)
    assert np.allclose(sq.vertices, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)
    got = sq.slope_set()
    assert len(got) == 4
    for a in (-math.pi / 4, 0.0, math.pi / 4, math.pi / 2):  # -1, 0, 1, vertical
        assert min(angle_distance(a, b) for b in got.angles) < 1e-12


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 11, 16])
def test_regular_slope_count_matches_oracle(n):
    poly = regular_ngon(n)
    assert len(poly.slope_set()) == n == len(distinct_directions(all_pair_angles(poly.vertices)))


def test_affine_order_examples(rng):
    assert affine_order(AffineMap(0.0, -1.0, 1.0, 0.0), 10) == 4
    assert affine_order(AffineMap(1.0, 1.0, 0.0, 1.0), 1000) is None
    lam = random_affine(rng)
    rot = regular_ngon(5).generator
    conj = lam.compose(rot).compose(lam.inverse())
    assert affine_order(conj, 50) == 5


@given(st.integers(3, 40), st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_order_matches_matrix_power(d, seed):
    poly = random_affreg(d, np.random.default_rng(seed))
    coef = [float(c) for c in poly.generator.coefficients]
    assert affine_order(poly.generator, 64) == np_order(coef, 64) == d


def test_boundary_patterns():
    assert expected_boundary_indices(5) == [1, 3, 0, 2, 4]
    assert expected_boundary_indices(4) == [1, 3, 1, 3]


@given(st.integers(3, 48), st.integers(0, 2**32 - 1))
@settings(max_examples=25)
def test_profile_of_random_polygon(d, seed):
    poly = random_affreg(d, np.random.default_rng(seed))
    prof = slope_profile(poly)
    assert profile_is_consistent(prof)
    # every chord slope is one of the d slopes of the polygon
    ref = distinct_directions(all_pair_angles(poly.vertices))
    assert len(ref) == d
    for s in prof.slopes:
        assert min(angle_distance(s.angle, a) for a in ref) < 1e-8
    v = poly.vertices
    for i in range(1, d - 2):
        # equal index sums give parallel chords: P0Pi and P_{d-1}P_{i+1}
        a = math.atan2(v[i][1] - v[0][1], v[i][0] - v[0][0])
        b = math.atan2(v[(i + 1) % d][1] - v[d - 1][1], v[(i + 1) % d][0] - v[d - 1][0])
        assert angle_distance(a, b) < 1e-8


def test_profile_affine_invariant(rng):
    base = slope_profile(regular_ngon(5))
    img = slope_profile(affine_image(regular_ngon(5), random_affine(rng)))
    assert profile_is_consistent(base) and profile_is_consistent(img)


def test_shuffled_profile_rejected():
    prof = slope_profile(regular_ngon(7))
    slopes = list(prof.slopes)
    slopes[1], slopes[2] = slopes[2], slopes[1]
    from scgd.affreg import PolygonSlopeProfile

    assert not profile_is_consistent(PolygonSlopeProfile(tuple(slopes), prof.boundary))


def test_quad_variant_one_exact():
    s = [Slope.from_value(v) for v in (0, 1, 2, 3)]
    q = quad_from_slopes(s, 1)
    assert q == (P(0, 0), P(1, 0), P(2, 2), P(3, 6))
    assert [slope_of(q[a], q[b]).value for a, b in ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3))] == [0, 1, 2, 2, 3]


def test_quad_variant_two_exact():
    s = [Slope.from_value(v) for v in (0, 1, 2, 3)]
    q = quad_from_slopes(s, 2)
    pattern = {(0, 2): 0, (1, 2): 1, (0, 3): 1, (1, 3): 2, (2, 3): 3}
    for (a, b), v in pattern.items():
        assert slope_of(q[a], q[b]).value == v


def test_quad_rejects_repeats():
    with pytest.raises(PreconditionError):
        quad_from_slopes([Slope.from_value(v) for v in (0, 0, 2, 3)], 1)
    with pytest.raises(PreconditionError):
        quad_from_slopes([Slope.from_value(v) for v in (0, 1, 2, 3)], 3)


def test_octagon_four_points():
    oct_ = regular_ngon(8)
    s = oct_.slope_set()
    poly = four_points_query(s, 8, oct_.points()[:4])
    assert poly is not None and poly.order == 8
    assert np.allclose(np.sort(poly.vertices, axis=0), np.sort(oct_.vertices, axis=0), atol=1e-9)
    bumped = SlopeSet([Slope.from_angle(a + (1e-3 if i == 3 else 0.0)) for i, a in enumerate(s.angles)])
    assert four_points_query(bumped, 8, oct_.points()[:4]) is None


def test_shear_orbit_rejected():
    shear = AffineMap(1.0, 0.3, 0.0, 1.0, 1.0, 0.0)
    pts = [Point(0.0, 0.0)]
    for _ in range(3):
        pts.append(shear(pts[-1]) if pts[-1] != Point(0.0, 0.0) else Point(1.0, 0.5))
    pts = [Point(0.0, 0.5), Point(1.15, 0.5), Point(2.3, 0.5 + 0.01), Point(3.0, 2.0)]
    s = regular_ngon(9).slope_set()
    assert four_points_query(s, 5, pts) is None


def test_nine_gon_four_slopes(rng):
    poly = random_affreg(9, rng)
    s = poly.slope_set()
    t = list(s)[2:6]
    out = four_slopes_query(s, 9, t)
    assert out is not None and out.order == 9
    assert polygon_slopes_within(out, s)
    assert four_slopes_query(s, 9, [t[1], t[0], t[2], t[3]]) is None


def test_slope_outside_rejected(rng):
    poly = random_affreg(9, rng)
    s = poly.slope_set()
    t = list(s)[:3] + [Slope.from_angle(float(s.angles[3]) + 0.01)]
    assert four_slopes_query(s, 9, t) is None


@given(st.integers(5, 200), st.integers(0, 2**32 - 1), st.integers(0, 1000))
@settings(max_examples=40)
def test_consecutive_slopes_reconstruct(d, seed, start):
    poly = random_affreg(d, np.random.default_rng(seed))
    s = poly.slope_set()
    t = [s[(start + i) % d] for i in range(4)]
    t = sorted(t) if start % d > d - 4 else t
    out = four_slopes_query(s, d, t)
    if start % d <= d - 4:
        assert out is not None and out.order == d
    if out is not None:
        assert polygon_slopes_within(out, s)


@pytest.mark.parametrize("d", [300, 1000, 4096])
def test_large_polygon_reconstruct(d):
    poly = random_affreg(d, np.random.default_rng(d))
    s = poly.slope_set()
    out = four_slopes_query(s, d, list(s)[:4])
    assert out is not None and out.order == d
    assert polygon_slopes_within(out, s)


def test_large_polygon_perturbed_rejected():
    d = 2000
    poly = random_affreg(d, np.random.default_rng(1))
    ang = poly.slope_set().angles.copy()
    ang[d // 2] += 1e-3
    s = SlopeSet([Slope.from_angle(a) for a in ang])
    assert four_slopes_query(s, d, list(s)[:4]) is None
