"""Geometry kernel: points, slopes, affine maps and homothety matching.

Two numeric modes coexist.  Exact mode uses ``int``/``Fraction`` coordinates and
every predicate is decided exactly.  Float mode uses ``float`` coordinates and
compares slopes by angular distance with a configurable tolerance.  Mixing the
two inside one computation raises :class:`~scgd.errors.ModeError`.
"""
from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from numbers import Rational
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DegenerateError, ModeError, PreconditionError

EPS = 1e-9
HALF_PI = math.pi / 2


def is_exact(value) -> bool:
    return isinstance(value, Rational) and not isinstance(value, bool)


def _check_finite(value):
    if not is_exact(value):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"non-finite scalar {value!r}")
    return value


class Point(NamedTuple):
    x: object
    y: object

    @property
    def exact(self) -> bool:
        return is_exact(self.x) and is_exact(self.y)


def point(x, y) -> Point:
    """Build a point, validating that both coordinates share a numeric mode."""
    x, y = _check_finite(x), _check_finite(y)
    if is_exact(x) != is_exact(y):
        raise ModeError(f"mixed coordinates ({x!r}, {y!r})")
    return Point(x, y)


def mode_of(points: Iterable[Point]) -> str:
    """Return ``"exact"`` or ``"float"`` for a collection of points."""
    modes = {p.exact for p in points}
    if len(modes) > 1:
        raise ModeError("point set mixes exact and floating-point coordinates")
    return "float" if modes == {False} else "exact"


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orientation(p: Point, q: Point, r: Point):
    """Twice the signed area of the triangle pqr."""
    return cross(q.x - p.x, q.y - p.y, r.x - p.x, r.y - p.y)


# ---------------------------------------------------------------------------
# Slopes
# ---------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True, eq=True)
class Slope:
    """Canonical direction of a line.

    Exact slopes are primitive integer pairs with ``dx > 0``; float slopes are
    stored as ``(1.0, value)``.  The vertical slope is ``(0, 1)`` in both modes
    and is the greatest element of the linear order.
    """

    dx: object
    dy: object

    @classmethod
    def from_direction(cls, dx, dy) -> "Slope":
        if dx == 0 and dy == 0:
            raise DegenerateError("degenerate segment")
        if is_exact(dx) and is_exact(dy):
            dx, dy = Fraction(dx), Fraction(dy)
            scale = dx.denominator * dy.denominator // math.gcd(dx.denominator, dy.denominator)
            ix, iy = int(dx * scale), int(dy * scale)
            if ix == 0:
                return cls(0, 1)
            g = math.gcd(ix, iy)
            if ix < 0:
                g = -g
            return cls(ix // g, iy // g)
        if is_exact(dx) != is_exact(dy):
            raise ModeError("direction mixes exact and float components")
        dx, dy = float(dx), float(dy)
        if dx == 0.0:
            return cls(0.0, 1.0)
        value = dy / dx
        if not math.isfinite(value):
            return cls(0.0, 1.0)
        return cls(1.0, value + 0.0)

    @classmethod
    def from_value(cls, value) -> "Slope":
        """Slope from its real value; ``math.inf`` or ``None`` mean vertical."""
        if value is None:
            return cls(0, 1)
        if is_exact(value):
            value = Fraction(value)
            return cls(value.denominator, value.numerator)
        value = float(value)
        if math.isinf(value):
            return cls(0.0, 1.0)
        if math.isnan(value):
            raise ValueError("NaN slope")
        return cls(1.0, value + 0.0)

    @classmethod
    def from_angle(cls, theta: float) -> "Slope":
        theta = math.remainder(theta, math.pi)
        if abs(theta) >= HALF_PI:
            return cls(0.0, 1.0)
        return cls(1.0, math.tan(theta))

    @staticmethod
    def vertical(exact: bool = True) -> "Slope":
        return Slope(0, 1) if exact else Slope(0.0, 1.0)

    @property
    def exact(self) -> bool:
        return is_exact(self.dx)

    @property
    def is_vertical(self) -> bool:
        return self.dx == 0

    @property
    def value(self):
        """``Fraction``/``float`` value, ``math.inf`` when vertical."""
        if self.dx == 0:
            return math.inf
        if self.exact:
            return Fraction(self.dy, self.dx)
        return self.dy / self.dx

    @cached_property
    def angle(self) -> float:
        """Direction angle in ``(-pi/2, pi/2]``; monotone in the slope order."""
        if self.dx == 0:
            return HALF_PI
        if self.exact:
            return math.atan2(self.dy, self.dx)
        return math.atan(self.dy / self.dx)

    def _key(self):
        if self.dx == 0:
            return (1, 0)
        return (0, self.value if self.exact else self.angle)

    def __lt__(self, other: "Slope") -> bool:
        if not isinstance(other, Slope):
            return NotImplemented
        if self.exact != other.exact:
            raise ModeError("cannot order exact and float slopes")
        return self._key() < other._key()

    def __repr__(self) -> str:
        if self.dx == 0:
            return "Slope(inf)"
        return f"Slope({self.value})"

    def __str__(self) -> str:
        from .jsonio import format_slope

        return str(format_slope(self))


def angle_distance(a: float, b: float) -> float:
    """Distance between two line directions given as angles (period pi)."""
    d = abs(a - b) % math.pi
    return min(d, math.pi - d)


def same_slope(s: Slope, t: Slope, eps: float = EPS) -> bool:
    if s.exact and t.exact:
        return s == t
    return angle_distance(s.angle, t.angle) < eps


def slope_of(p: Point, q: Point) -> Slope:
    """Slope of the line through two distinct points."""
    if p == q:
        raise DegenerateError("degenerate segment")
    return Slope.from_direction(q.x - p.x, q.y - p.y)


class SlopeSet(Sequence):
    """Strictly increasing, duplicate-free list of slopes with cyclic windows.

    Float-mode sets merge slopes closer than ``eps`` (also across the vertical,
    where the cyclic order wraps).
    """

    def __init__(self, slopes: Iterable[Slope] = (), eps: float = EPS, *, presorted: bool = False):
        items = list(slopes)
        modes = {s.exact for s in items}
        if len(modes) > 1:
            raise ModeError("slope set mixes exact and float slopes")
        self.exact = modes != {False}
        self.eps = eps
        if not presorted:
            items.sort()
            if self.exact:
                items = [s for i, s in enumerate(items) if i == 0 or s != items[i - 1]]
            else:
                merged = []
                for s in items:
                    if merged and angle_distance(merged[-1].angle, s.angle) < eps:
                        continue
                    merged.append(s)
                if len(merged) > 1 and angle_distance(merged[0].angle, merged[-1].angle) < eps:
                    merged.pop()
                items = merged
        self._slopes = tuple(items)
        self._members = frozenset(items) if self.exact else None

    @property
    def slopes(self) -> tuple:
        return self._slopes

    def __len__(self) -> int:
        return len(self._slopes)

    def __getitem__(self, index):
        return self._slopes[index]

    def __iter__(self):
        return iter(self._slopes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SlopeSet):
            return NotImplemented
        if self.exact and other.exact:
            return self._slopes == other._slopes
        return len(self) == len(other) and all(
            same_slope(a, b, max(self.eps, other.eps)) for a, b in zip(self, other)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"SlopeSet({list(self._slopes)!r})"

    @cached_property
    def angles(self):
        import numpy as np

        return np.array([s.angle for s in self._slopes], dtype=np.float64)

    def index(self, slope: Slope, *args) -> int:
        if self.exact and slope.exact:
            i = bisect_left(self._slopes, slope)
            if i < len(self) and self._slopes[i] == slope:
                return i
            raise ValueError(f"{slope!r} not in slope set")
        i = self._nearest(slope)
        if i is None:
            raise ValueError(f"{slope!r} not in slope set")
        return i

    def _nearest(self, slope: Slope) -> Optional[int]:
        if not self._slopes:
            return None
        a = slope.angle
        angles = self.angles
        i = int(angles.searchsorted(a))
        for j in (i - 1, i, 0, len(self) - 1):
            j %= len(self)
            if angle_distance(angles[j], a) < self.eps:
                return j
        return None

    def __contains__(self, slope) -> bool:
        if not isinstance(slope, Slope):
            return False
        if self.exact and slope.exact:
            return slope in self._members
        return self._nearest(slope) is not None

    def issubset(self, other: "SlopeSet") -> bool:
        return all(s in other for s in self)

    def window(self, start: int, length: int) -> tuple:
        return consecutive_window(self, start, length)


def consecutive_window(s: SlopeSet, start_index: int, length: int) -> tuple:
    """``length`` consecutive slopes of ``s`` from ``start_index``, wrapping cyclically."""
    n = len(s)
    if not 1 <= length <= n:
        raise PreconditionError(f"window length {length} outside 1..{n}")
    return tuple(s[(start_index + i) % n] for i in range(length))


def slope_set(a: Sequence[Point], eps: float = EPS) -> SlopeSet:
    """The set of all slopes determined by ``a``."""
    pts = list(a)
    if len(pts) < 2:
        raise PreconditionError("slope set needs at least two points")
    mode_of(pts)
    return SlopeSet((slope_of(p, q) for p, q in itertools.combinations(pts, 2)), eps)


def _check_distinct(pts: Sequence[Point]) -> None:
    if len(set(pts)) != len(pts):
        raise DegenerateError("point set contains duplicate points")


def is_simple(a: Sequence[Point], eps: float = EPS) -> bool:
    """True iff no three points are collinear.

    In float mode a triple counts as collinear when ``|orientation|`` is below
    ``eps * scale**2`` with ``scale`` the largest coordinate magnitude.
    """
    pts = list(a)
    _check_distinct(pts)
    exact = mode_of(pts) == "exact"
    if exact:
        return all(orientation(p, q, r) != 0 for p, q, r in itertools.combinations(pts, 3))
    scale = max((max(abs(p.x), abs(p.y)) for p in pts), default=0.0) or 1.0
    tol = eps * scale * scale
    return all(abs(orientation(p, q, r)) > tol for p, q, r in itertools.combinations(pts, 3))


def has_distinct_slopes(a: Sequence[Point], eps: float = EPS) -> bool:
    pts = list(a)
    if not is_simple(pts, eps):
        return False
    if len(pts) < 2:
        return True
    return len(slope_set(pts, eps)) == len(pts) * (len(pts) - 1) // 2


def q_poly(m: Sequence) -> object:
    """The quadruple polynomial on ``(m12, m13, m14, m23, m24, m34)``.

    Accepts slope objects or plain scalars; vertical slopes are rejected.
    """
    if len(m) != 6:
        raise PreconditionError("q_poly takes exactly six values")
    z = []
    for v in m:
        if isinstance(v, Slope):
            if v.is_vertical:
                raise PreconditionError("q_poly is undefined for a vertical slope")
            v = v.value
        elif v is None or (not is_exact(v) and math.isinf(float(v))):
            raise PreconditionError("q_poly is undefined for a vertical slope")
        z.append(v)
    z1, z2, z3, z4, z5, z6 = z
    return (z3 - z5) * (z6 - z2) * (z4 - z1) - (z2 - z4) * (z5 - z1) * (z6 - z3)


# ---------------------------------------------------------------------------
# Lines and the dual quadruple
# ---------------------------------------------------------------------------


def direction(s: Slope):
    return (s.dx, s.dy)


def _div(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


def intersect(p: Point, u, q: Point, v) -> Point:
    """Intersection of the lines ``p + t*u`` and ``q + s*v``."""
    den = cross(u[0], u[1], v[0], v[1])
    if den == 0:
        raise DegenerateError("parallel lines do not intersect")
    t = _div(cross(q.x - p.x, q.y - p.y, v[0], v[1]), den)
    return Point(p.x + t * u[0], p.y + t * u[1])


def _vec(p: Point, q: Point):
    return (q.x - p.x, q.y - p.y)


def dual(e: Sequence[Point]) -> tuple:
    """The dual list of a simple list of four points.

    ``F1`` is where ``E2E4`` meets the parallel to ``E2E3`` through ``E1``;
    ``F2`` is where ``E1E3`` meets the parallel to ``E1E4`` through ``E2``;
    ``F3 = E2`` and ``F4 = E1``.
    """
    e = tuple(e)
    if len(e) != 4:
        raise PreconditionError("dual is defined on four points")
    if not is_simple(e):
        raise DegenerateError("dual needs a simple quadruple")
    e1, e2, e3, e4 = e
    f1 = intersect(e2, _vec(e2, e4), e1, _vec(e2, e3))
    f2 = intersect(e1, _vec(e1, e3), e2, _vec(e1, e4))
    return (f1, f2, e2, e1)


# ---------------------------------------------------------------------------
# Affine maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``(x, y) -> (a*x + b*y + e, c*x + d*y + f)``."""

    a: object
    b: object
    c: object
    d: object
    e: object = 0
    f: object = 0

    def __post_init__(self):
        if self.det == 0:
            raise DegenerateError("affine map is not invertible")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 1, 0, 0)

    @classmethod
    def from_points(cls, src: Sequence[Point], dst: Sequence[Point]) -> "AffineMap":
        """The unique affine map sending three non-collinear ``src`` points to ``dst``."""
        p0, p1, p2 = src
        q0, q1, q2 = dst
        ux, uy = _vec(p0, p1)
        vx, vy = _vec(p0, p2)
        det = cross(ux, uy, vx, vy)
        if det == 0:
            raise DegenerateError("source points are collinear")
        wx, wy = _vec(q0, q1)
        zx, zy = _vec(q0, q2)
        # [w z] = L [u v]  =>  L = [w z] [u v]^-1
        ia, ib, ic, id_ = _div(vy, det), _div(-vx, det), _div(-uy, det), _div(ux, det)
        a = wx * ia + zx * ic
        b = wx * ib + zx * id_
        c = wy * ia + zy * ic
        d = wy * ib + zy * id_
        return cls(a, b, c, d, q0.x - (a * p0.x + b * p0.y), q0.y - (c * p0.x + d * p0.y))

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def coefficients(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def __call__(self, p: Point) -> Point:
        return Point(self.a * p.x + self.b * p.y + self.e, self.c * p.x + self.d * p.y + self.f)

    def apply_slope(self, s: Slope) -> Slope:
        return Slope.from_direction(self.a * s.dx + self.b * s.dy, self.c * s.dx + self.d * s.dy)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self`` after ``other``."""
        return AffineMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.a * other.e + self.b * other.f + self.e,
            self.c * other.e + self.d * other.f + self.f,
        )

    def inverse(self) -> "AffineMap":
        det = self.det
        a, b, c, d = _div(self.d, det), _div(-self.b, det), _div(-self.c, det), _div(self.a, det)
        return AffineMap(a, b, c, d, -(a * self.e + b * self.f), -(c * self.e + d * self.f))


@dataclass(frozen=True)
class Homothety:
    """Scaling by ``ratio`` followed by translation; a member of the group fixing every slope."""

    ratio: object
    tx: object = 0
    ty: object = 0

    def __post_init__(self):
        if self.ratio == 0:
            raise DegenerateError("homothety ratio must be nonzero")

    def __call__(self, p: Point) -> Point:
        return Point(self.ratio * p.x + self.tx, self.ratio * p.y + self.ty)

    def as_affine(self) -> AffineMap:
        return AffineMap(self.ratio, 0, 0, self.ratio, self.tx, self.ty)


def _close(a, b, eps) -> bool:
    if eps is None:
        return a == b
    return abs(a - b) <= eps * max(1.0, abs(a), abs(b))


def _homothety_from_pair(p0, p1, q0, q1, eps) -> Optional[Homothety]:
    ux, uy = _vec(p0, p1)
    vx, vy = _vec(q0, q1)
    if eps is None:
        if cross(ux, uy, vx, vy) != 0:
            return None
    else:
        if abs(cross(ux, uy, vx, vy)) > eps * max(1.0, abs(ux), abs(uy)) * max(1.0, abs(vx), abs(vy)):
            return None
    ratio = _div(vx, ux) if abs(ux) >= abs(uy) else _div(vy, uy)
    if ratio == 0:
        return None
    return Homothety(ratio, q0.x - ratio * p0.x, q0.y - ratio * p0.y)


def _tolerance_for(points: Sequence[Point], eps: Optional[float]) -> Optional[float]:
    if mode_of(points) == "exact":
        return None
    return EPS if eps is None else eps


def find_homothety(e: Sequence[Point], f: Sequence[Point], eps: Optional[float] = None) -> Optional[Homothety]:
    """The unique homothety-or-translation mapping ``e[i]`` to ``f[i]``, or ``None``."""
    e, f = list(e), list(f)
    if len(e) != len(f):
        raise PreconditionError("point lists differ in length")
    if len(e) < 2:
        raise PreconditionError("need at least two points")
    tol = _tolerance_for(e + f, eps)
    phi = _homothety_from_pair(e[0], e[1], f[0], f[1], tol)
    if phi is None:
        return None
    for p, q in zip(e, f):
        r = phi(p)
        if not (_close(r.x, q.x, tol) and _close(r.y, q.y, tol)):
            return None
    return phi


class _PointIndex:
    """Membership index for a point set; exact hashing or sorted-by-x with tolerance."""

    def __init__(self, points: Sequence[Point], eps: Optional[float]):
        self.eps = eps
        if eps is None:
            self._set = frozenset(points)
        else:
            self._sorted = sorted(points)
            self._xs = [p.x for p in self._sorted]

    def __contains__(self, p: Point) -> bool:
        if self.eps is None:
            return p in self._set
        tol = self.eps * max(1.0, abs(p.x), abs(p.y))
        i = bisect_left(self._xs, p.x - tol)
        while i < len(self._xs) and self._xs[i] <= p.x + tol:
            q = self._sorted[i]
            if _close(q.x, p.x, self.eps) and _close(q.y, p.y, self.eps):
                return True
            i += 1
        return False


def embeds(a: Sequence[Point], b: Sequence[Point], eps: Optional[float] = None) -> Optional[Homothety]:
    """Some homothety-or-translation ``phi`` with ``phi(a)`` contained in ``b``, or ``None``.

    The two lexicographically smallest points of ``a`` are anchored on every
    ordered pair of ``b``; each anchor fixes a unique candidate which is then
    checked against an index of ``b``.
    """
    a, b = list(a), list(b)
    if len(a) < 2:
        raise PreconditionError("embedding needs at least two points in the source")
    if len(b) < len(a):
        return None
    tol = _tolerance_for(a + b, eps)
    p0, p1 = sorted(a)[:2]
    index = _PointIndex(b, tol)
    for q0, q1 in itertools.permutations(b, 2):
        phi = _homothety_from_pair(p0, p1, q0, q1, tol)
        if phi is not None and all(phi(p) in index for p in a):
            return phi
    return None


def translate_to_origin(points: Sequence[Point]) -> tuple:
    p0 = points[0]
    return tuple(Point(p.x - p0.x, p.y - p0.y) for p in points)
