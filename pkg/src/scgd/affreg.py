"""Affinely-regular polygons: construction, order detection and slope queries.

All polygon arithmetic is double precision; slopes of an affinely-regular
``d``-gon are irrational unless ``d`` is 3, 4 or 6.  Slopes are handled as
angles in ``(-pi/2, pi/2]`` and compared with an angular tolerance ``eps``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import DegenerateError, PreconditionError
from .geometry import (
    EPS,
    AffineMap,
    Point,
    Slope,
    SlopeSet,
    angle_distance,
    intersect,
    is_simple,
)

ID_TOL = 1e-6
FULL_CHECK_LIMIT = 128
DET_TOL = 1e-4
HALF_PI = math.pi / 2


@dataclass(frozen=True, eq=False)
class AffRegPolygon:
    """Vertex orbit ``P_i = phi**i (P_0)`` of an order-``d`` affine map."""

    vertices: np.ndarray
    generator: AffineMap
    order: int
    variant: Optional[int] = field(default=None, compare=False)

    def __len__(self) -> int:
        return self.order

    def points(self) -> list:
        return [Point(float(x), float(y)) for x, y in self.vertices]

    def chord_angles(self) -> np.ndarray:
        """Angles of ``s_0 = slope(P_{d-1} P_1)`` and ``s_i = slope(P_0 P_i)``."""
        return kernels.chord_angles(np.ascontiguousarray(self.vertices, dtype=np.float64))

    def slope_set(self, eps: float = EPS) -> SlopeSet:
        return SlopeSet((Slope.from_angle(a) for a in self.chord_angles()), eps)


@dataclass(frozen=True)
class PolygonSlopeProfile:
    slopes: Tuple[Slope, ...]
    boundary: Tuple[Slope, ...]


def _coef(m: AffineMap) -> np.ndarray:
    return np.array([float(v) for v in m.coefficients], dtype=np.float64)


def regular_ngon(n: int) -> AffRegPolygon:
    """Unit-circle regular ``n``-gon generated by the rotation through ``2 pi / n``."""
    if n < 3:
        raise PreconditionError("a polygon needs at least 3 vertices")
    t = 2 * math.pi * np.arange(n) / n
    verts = np.column_stack([np.cos(t), np.sin(t)])
    c, s = math.cos(2 * math.pi / n), math.sin(2 * math.pi / n)
    return AffRegPolygon(verts, AffineMap(c, -s, s, c, 0.0, 0.0), n)


def affine_image(poly: AffRegPolygon, psi: AffineMap) -> AffRegPolygon:
    lin = np.array([[psi.a, psi.b], [psi.c, psi.d]], dtype=np.float64)
    verts = poly.vertices @ lin.T + np.array([psi.e, psi.f], dtype=np.float64)
    gen = psi.compose(poly.generator).compose(psi.inverse())
    return AffRegPolygon(verts, gen, poly.order)


def random_affine(rng: np.random.Generator, max_condition: float = 20.0) -> AffineMap:
    """A random invertible affine map with bounded condition number."""
    while True:
        a, b, c, d = rng.normal(size=4)
        e, f = rng.uniform(-5, 5, size=2)
        lin = np.array([[a, b], [c, d]])
        if abs(np.linalg.det(lin)) > 1e-3 and np.linalg.cond(lin) < max_condition:
            return AffineMap(float(a), float(b), float(c), float(d), float(e), float(f))


def random_affreg(d: int, rng: np.random.Generator, max_condition: float = 20.0) -> AffRegPolygon:
    return affine_image(regular_ngon(d), random_affine(rng, max_condition))


def affine_order(m: AffineMap, max_order: int, tol: float = ID_TOL) -> Optional[int]:
    """Smallest ``d <= max_order`` with ``m**d`` within ``tol`` of the identity, else ``None``."""
    if max_order < 1:
        raise PreconditionError("max_order must be at least 1")
    d = int(kernels.affine_order(_coef(m), int(max_order), float(tol)))
    return d or None


def slope_profile(p: AffRegPolygon) -> PolygonSlopeProfile:
    d = p.order
    angles = p.chord_angles()
    slopes = tuple(Slope.from_angle(a) for a in angles)
    v = p.vertices
    nxt = np.roll(v, -1, axis=0)
    edge = np.arctan2(nxt[:, 1] - v[:, 1], nxt[:, 0] - v[:, 0])
    boundary = tuple(Slope.from_angle(a) for a in edge)
    assert len(slopes) == d
    return PolygonSlopeProfile(slopes, boundary)


def expected_boundary_indices(d: int) -> list:
    """Indices into ``s_0..s_{d-1}`` of the boundary slopes, in vertex order."""
    if d % 2:
        return list(range(1, d, 2)) + list(range(0, d, 2))
    return list(range(1, d, 2)) * 2


def profile_is_consistent(profile: PolygonSlopeProfile, eps: float = 1e-8) -> bool:
    """Cyclic monotonicity of ``s_0..s_{d-1}`` and the boundary pattern."""
    angles = np.array([s.angle for s in profile.slopes])
    d = len(angles)
    if kernels.ascending_cyclic(angles, eps) is None:
        return False
    steps = np.diff(np.concatenate([angles, angles[:1]]))
    # counterclockwise turns in [0, pi); a monotone cyclic sequence turns
    # through exactly pi in one direction or the other
    steps = np.mod(steps, math.pi)
    if np.any(steps < eps) or np.any(steps > math.pi - eps):
        return False
    total = float(steps.sum())
    monotone = abs(total - math.pi) < 1e-6 or abs(total - (d - 1) * math.pi) < 1e-6
    boundary_ok = all(
        angle_distance(b.angle, profile.slopes[i].angle) < eps
        for b, i in zip(profile.boundary, expected_boundary_indices(d))
    )
    return monotone and boundary_ok


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def _unit(s: Slope):
    if s.exact:
        return (0, 1) if s.is_vertical else (1, s.value)
    return (math.cos(s.angle), math.sin(s.angle))


def quad_from_slopes(s: Sequence[Slope], variant: int) -> Tuple[Point, ...]:
    """Four points realizing one of the two consecutive-slope patterns.

    Variant 1: ``P0P1 = s0, P0P2 = s1, P1P2 = P0P3 = s2, P1P3 = s3``.
    Variant 2: ``P0P2 = s0, P1P2 = P0P3 = s1, P1P3 = s2, P2P3 = s3``.
    The result is pinned with ``P0`` at the origin and the first prescribed
    neighbour one unit along its slope (unit x-distance in exact mode).
    """
    s = tuple(s)
    if len(s) != 4:
        raise PreconditionError("need four slopes")
    if len({(x.dx, x.dy) for x in s}) != 4 or any(
        angle_distance(a.angle, b.angle) == 0.0 for i, a in enumerate(s) for b in s[i + 1 :]
    ):
        raise PreconditionError("slopes must be pairwise distinct")
    s0, s1, s2, s3 = s
    exact = all(x.exact for x in s)
    if not exact:
        s = tuple(x if not x.exact else Slope.from_angle(x.angle) for x in s)
        s0, s1, s2, s3 = s
    zero = 0 if exact else 0.0
    p0 = Point(zero, zero)
    if variant == 1:
        p1 = Point(*_unit(s0))
        p2 = intersect(p0, _unit(s1), p1, _unit(s2))
        p3 = intersect(p0, _unit(s2), p1, _unit(s3))
    elif variant == 2:
        p2 = Point(*_unit(s0))
        p3 = intersect(p0, _unit(s1), p2, _unit(s3))
        p1 = intersect(p2, _unit(s1), p3, _unit(s2))
    else:
        raise PreconditionError("variant must be 1 or 2")
    return (p0, p1, p2, p3)


def _float_points(p: Sequence[Point]) -> Tuple[Point, ...]:
    return tuple(Point(float(q.x), float(q.y)) for q in p)


def _ref_angles(s) -> np.ndarray:
    if isinstance(s, SlopeSet):
        return s.angles
    return np.asarray(s, dtype=np.float64)


def _orbit_candidate(phi: AffineMap, p0: Point, k: int, ref: np.ndarray, eps: float, id_tol: float):
    coef = _coef(phi)
    n = ref.size
    d = int(kernels.affine_order(coef, n, float(id_tol)))
    if d == 0 or d < max(k, 3):
        return None
    theta = rotation_number(phi)
    lin = _shape_matrix(phi, p0) if theta is not None else None
    if lin is None:
        verts = kernels.orbit(coef, p0.x, p0.y, d)
        poly = AffRegPolygon(verts, phi, d)
    else:
        # closed form of the snapped orbit; iterating phi d times drifts
        poly = _polygon_from_shape(p0, lin, d, max(1, round(d * theta / (2 * math.pi))))
    angles = kernels.ascending_cyclic(kernels.chord_angles(poly.vertices), eps)
    if angles is None or not kernels.sorted_inclusion(angles, ref, float(eps)):
        return None
    return poly


def _wrap(x):
    return (x + HALF_PI) % math.pi - HALF_PI


def rotation_number(phi: AffineMap) -> Optional[float]:
    """Rotation angle in ``(0, pi)`` of an elliptic orientation-preserving map, else ``None``."""
    det = float(phi.det)
    if not det > 0:
        return None
    c = (float(phi.a) + float(phi.d)) / (2 * math.sqrt(det))
    if not -1.0 < c < 1.0:
        return None
    return math.acos(c)


def _shape_matrix(phi: AffineMap, p0: Point):
    """Centre ``c`` and ``L`` with ``phi ~ c + L R L^-1 (x - c)`` and ``P0 = c + L e1``."""
    a = np.array([[float(phi.a), float(phi.b)], [float(phi.c), float(phi.d)]])
    b = np.array([float(phi.e), float(phi.f)])
    det = np.linalg.det(a)
    an = a / math.sqrt(det)
    cos_t = np.trace(an) / 2
    j = (an - cos_t * np.eye(2)) / math.sqrt(1.0 - cos_t * cos_t)
    try:
        c = np.linalg.solve(np.eye(2) - a, b)
    except np.linalg.LinAlgError:
        return None
    v = np.array([p0.x, p0.y]) - c
    lin = np.column_stack([v, j @ v])
    if not abs(np.linalg.det(lin)) > 0:
        return None
    return lin


def _match(th: np.ndarray, ref: np.ndarray):
    """Signed offset from each angle to its nearest slope of ``ref`` and the local slope gap."""
    pos = np.searchsorted(ref, th) % ref.size
    hi, lo = ref[pos], ref[pos - 1]
    d_hi, d_lo = _wrap(hi - th), _wrap(lo - th)
    return np.where(np.abs(d_hi) < np.abs(d_lo), d_hi, d_lo), np.abs(_wrap(hi - lo))


def refine_shape(
    lin: np.ndarray,
    rho: float,
    ref: np.ndarray,
    eps: float,
    lo: int = 3,
    hi: Optional[int] = None,
    max_iter: int = 80,
):
    """Fit ``L`` and the step ``rho`` so that chord directions ``L u(pi/2 + rho m)`` hit ``ref``.

    Chord ``m`` (signed, ``P0 P_m``) of an affinely-regular ``d``-gon with
    ``P_i = c + L (cos(2 rho i), sin(2 rho i))`` has direction
    ``L u(pi/2 + rho m)`` where ``rho = pi / d``.  Gauss-Newton runs on the
    four entries of ``L`` (determinant renormalized) and on ``rho`` over a
    window ``|m| <= w`` that doubles each iteration; once it spans the
    polygon, ``d`` is rounded into ``[lo, hi]`` and only ``L`` is refitted.
    The total work is ``O(d)``.  Returns ``(L, d)`` when every chord lies
    within ``eps / 4`` of a slope of ``ref``, else ``None``.
    """
    hi = ref.size if hi is None else hi
    det0 = np.linalg.det(lin)
    if det0 == 0:
        return None
    scale = math.sqrt(abs(det0))
    orient = 1.0 if det0 > 0 else -1.0
    lin = lin / scale
    w = 8
    d = None
    for _ in range(max_iter):
        if d is None and w >= math.pi / rho / 2:
            d = round(math.pi / rho)
            if not lo <= d <= hi:
                return None
            rho = math.pi / d
        span = d // 2 if d is not None else w
        m = np.arange(-span, span + 1) if d is None or d % 2 else np.arange(-span + 1, span + 1)
        beta = HALF_PI + rho * m
        u0, u1 = np.cos(beta), np.sin(beta)
        x = lin[0, 0] * u0 + lin[0, 1] * u1
        y = lin[1, 0] * u0 + lin[1, 1] * u1
        th = kernels._fold_array(np.arctan2(y, x))
        res, gap = _match(th, ref)
        if d is not None and np.max(np.abs(res)) < eps / 4:
            fit = lin * scale
            return (fit, d) if abs(np.linalg.det(fit)) > 0 else None
        use = np.abs(res) < np.maximum(gap / 4, eps)
        if use.sum() < 6:
            return None
        r2 = x * x + y * y
        ga, gb = -y / r2, x / r2
        cols = [ga * u0, ga * u1, gb * u0, gb * u1]
        if d is None:
            dx = -lin[0, 0] * u1 + lin[0, 1] * u0
            dy = -lin[1, 0] * u1 + lin[1, 1] * u0
            cols.append((x * dy - y * dx) / r2 * m)
        jac = np.stack(cols, axis=1)[use]
        step = np.linalg.lstsq(jac, res[use], rcond=None)[0]
        lin = lin + step[:4].reshape(2, 2)
        if d is None:
            rho += step[4]
            if not 0 < rho < math.pi / 2:
                return None
        det = orient * np.linalg.det(lin)
        if not (det > 0 and math.isfinite(det) and np.all(np.isfinite(lin))):
            return None
        lin = lin / math.sqrt(det)
        w = 2 * w
    return None


def _polygon_from_shape(p0: Point, lin: np.ndarray, d: int, j: int = 1) -> AffRegPolygon:
    """Vertices ``P0 + L (cos t_i - 1, sin t_i)`` with ``t_i = 2 pi j i / d``."""
    step = 2 * math.pi * j / d
    t = step * np.arange(d)
    base = np.array([p0.x, p0.y])
    verts = base + np.column_stack([np.cos(t) - 1, np.sin(t)]) @ lin.T
    c = base - lin[:, 0]
    rot = np.array([[math.cos(step), -math.sin(step)], [math.sin(step), math.cos(step)]])
    a = lin @ rot @ np.linalg.inv(lin)
    b = c - a @ c
    gen = AffineMap(float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]), float(b[0]), float(b[1]))
    return AffRegPolygon(verts, gen, d)


def _refined_candidate(phi: AffineMap, p0: Point, k: int, ref: np.ndarray, eps: float):
    theta = rotation_number(phi)
    if theta is None or abs(float(phi.det) - 1.0) > DET_TOL:
        return None
    lin = _shape_matrix(phi, p0)
    if lin is None:
        return None
    fit = refine_shape(lin, theta / 2, ref, eps, max(k, 3), ref.size)
    if fit is None:
        return None
    poly = _polygon_from_shape(p0, fit[0], fit[1])
    angles = kernels.ascending_cyclic(kernels.chord_angles(poly.vertices), eps)
    if angles is not None and kernels.sorted_inclusion(angles, ref, float(eps)):
        return poly
    return None


def four_points_query(
    s,
    k: int,
    p: Sequence[Point],
    eps: float = EPS,
    id_tol: float = ID_TOL,
    refine: bool = True,
) -> Optional[AffRegPolygon]:
    """The affinely-regular polygon having ``p`` as four consecutive vertices, if admissible.

    ``s`` is a sorted :class:`SlopeSet` (or its ascending angle array).  The
    polygon must have between ``k`` and ``len(s)`` vertices and all its slopes
    in ``s``.  Runs in time linear in ``len(s)``.

    The generator's order is first found by powering it.  For large orders four
    nearly adjacent double-precision vertices fix the generator too loosely
    for that, so with ``refine`` an elliptic generator is also snapped to the
    nearby orders and its shape fitted to the slopes of ``s``; the result then
    passes the same inclusion test and keeps ``P0`` as a vertex.
    """
    ref = _ref_angles(s)
    n = ref.size
    p = _float_points(p)
    if len(p) != 4:
        raise PreconditionError("need four points")
    if not is_simple(p):
        raise DegenerateError("the four points are not in general position")
    if n < 3 or k > n:
        return None
    phi = AffineMap.from_points(p[:3], p[1:])
    poly = _orbit_candidate(phi, p[0], k, ref, eps, id_tol)
    if poly is None and refine:
        poly = _refined_candidate(phi, p[0], k, ref, eps)
    return poly


def four_slopes_query(
    s,
    k: int,
    t: Sequence[Slope],
    eps: float = EPS,
    id_tol: float = ID_TOL,
    refine: bool = True,
) -> Optional[AffRegPolygon]:
    """Polygon with ``t`` as four consecutive slopes; tries both quadruple variants.

    The returned polygon records which variant succeeded in ``.variant``.
    """
    for variant in (1, 2):
        quad = quad_from_slopes(t, variant)
        poly = four_points_query(s, k, quad, eps, id_tol, refine)
        if poly is not None:
            return AffRegPolygon(poly.vertices, poly.generator, poly.order, variant)
    return None


def polygon_slopes_within(poly: AffRegPolygon, s, eps: float = EPS) -> bool:
    """Re-verify that every slope spanned by ``poly`` lies in ``s``.

    Up to ``FULL_CHECK_LIMIT`` vertices all pairs are checked.  Beyond that the
    chord slopes ``s_0..s_{d-1}`` are checked against ``s`` and every class of
    parallel chords ``P_i P_j`` (fixed ``i + j mod d``) is sampled at a second
    representative, which keeps the check linear.
    """
    ref = _ref_angles(s)
    v = np.asarray(poly.vertices, dtype=np.float64)
    d = v.shape[0]
    if d <= FULL_CHECK_LIMIT:
        i, j = np.triu_indices(d, 1)
        diff = v[j] - v[i]
        ang = np.arctan2(diff[:, 1], diff[:, 0])
        ang = np.sort(kernels._fold_array(ang))
        return bool(kernels.sorted_inclusion_numpy(ang, ref, eps))
    chords = np.sort(kernels.chord_angles(v))
    if not kernels.sorted_inclusion(chords, ref, float(eps)):
        return False
    # class m = i + j (mod d): compare chord (0, m) with chord (1, m - 1)
    m = np.arange(3, d)
    a = v[m % d] - v[0]
    b = v[(m - 1) % d] - v[1]
    ta = np.arctan2(a[:, 1], a[:, 0])
    tb = np.arctan2(b[:, 1], b[:, 0])
    return bool(np.all(kernels._cyclic_distance(ta, tb) < eps))
