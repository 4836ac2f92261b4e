"""CLIQUE to SCGD reduction, witness format and witness verification."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import PreconditionError
from .generic import GenericSet, build_generic
from .geometry import Point, Slope, SlopeSet, angle_distance, is_simple, slope_of
from .linalg import nullspace

Edge = Tuple[int, int]

#: angular and singular-value tolerance for float witnesses
FLOAT_TOL = 1e-7


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: FrozenSet[Edge]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(vertex_count, int) or vertex_count < 0:
            raise PreconditionError("vertex count must be a non-negative integer")
        norm = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise PreconditionError(f"edge {e!r} out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_clique(self, vertices: Iterable[int]) -> bool:
        return all(self.has_edge(u, v) for u, v in itertools.combinations(vertices, 2))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, ((i, (i + 1) % n) for i in range(n)))


def find_clique(g: Graph, k: int) -> Optional[Tuple[int, ...]]:
    """Brute-force search for a ``k``-clique (small graphs only)."""
    for sub in itertools.combinations(range(g.vertex_count), k):
        if g.is_clique(sub):
            return sub
    return None


@dataclass(frozen=True)
class ScgdInstance:
    slopes: SlopeSet
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError("k must be at least 1")


@dataclass(frozen=True)
class Witness:
    """Triples ``(i, j, s)`` for ``1 <= i < j <= k``."""

    k: int
    triples: Tuple[Tuple[int, int, Slope], ...]

    def slope_map(self) -> Dict[Tuple[int, int], Slope]:
        return {(i, j): s for i, j, s in self.triples}


@dataclass(frozen=True)
class Labeling:
    """Bijection vertex ``v`` -> point ``generic.points[v]`` plus the slope -> pair index."""

    generic: GenericSet
    inverse: Dict[int, Edge]

    def point(self, v: int) -> Point:
        return self.generic.points[v]

    def slope(self, u: int, v: int) -> Slope:
        return Slope(1, self.generic.slope(u, v))


def make_labeling(g: GenericSet) -> Labeling:
    inverse = {g.slope(u, v): (u, v) for u, v in itertools.combinations(range(len(g)), 2)}
    return Labeling(g, inverse)


def encode_clique(g: Graph, k: int, half_clique: bool = False, base: int = 50) -> Tuple[ScgdInstance, Labeling]:
    """Map ``(g, k)`` to an SCGD instance over a slope-generic labeling of the vertices.

    The slope set is ``{slope(f(v) f(w)) : vw an edge}``; every such slope is the
    integer ``base**c_v + base**c_w``.
    """
    if half_clique:
        k = math.ceil(g.vertex_count / 2)
    if k < 5:
        raise PreconditionError(f"k = {k} < 5: decide small cliques directly (see solver.solve_small)")
    lab = make_labeling(build_generic(max(g.vertex_count, 1), base))
    slopes = SlopeSet(lab.slope(u, v) for u, v in g.edges)
    return ScgdInstance(slopes, k), lab


def decode_slope(s: Slope, lab: Labeling) -> Edge:
    """The unique vertex pair whose labeled points span slope ``s``."""
    if s.exact and s.dx == 1 and s.dy in lab.inverse:
        return lab.inverse[s.dy]
    raise PreconditionError(f"{s!r} is not a sum of two distinct labeled powers")


def witness_from_vertices(vertices: Sequence[int], lab: Labeling) -> Witness:
    """Witness triples read off the labeled points of ``vertices`` (in the given order)."""
    k = len(vertices)
    triples = tuple(
        (i + 1, j + 1, lab.slope(vertices[i], vertices[j])) for i, j in itertools.combinations(range(k), 2)
    )
    return Witness(k, triples)


def _check_shape(w: Witness) -> None:
    if not isinstance(w.k, int) or w.k < 1:
        raise PreconditionError("witness k must be a positive integer")
    expected = set(itertools.combinations(range(1, w.k + 1), 2))
    got = [(i, j) for i, j, _ in w.triples]
    if len(got) != len(expected) or set(got) != expected:
        raise PreconditionError(f"witness must list every pair 1 <= i < j <= {w.k} exactly once")
    if not all(isinstance(s, Slope) for _, _, s in w.triples):
        raise PreconditionError("witness slopes must be Slope values")


def shared_vertex_distinct(w: Witness) -> bool:
    at = {}
    for i, j, s in w.triples:
        for v in (i, j):
            bucket = at.setdefault(v, set())
            if s in bucket:
                return False
            bucket.add(s)
    return True


def _system(w: Witness):
    """Rows of ``dx*(Yj - Yi) - dy*(Xj - Xi) = 0`` with point 1 pinned at the origin."""
    k = w.k
    nvar = 2 * (k - 1)

    def xi(i):
        return None if i == 1 else i - 2

    def yi(i):
        return None if i == 1 else k - 1 + i - 2

    rows = []
    for i, j, s in w.triples:
        dx, dy = (Fraction(s.dx), Fraction(s.dy)) if s.exact else _rationalize(s)
        row = [Fraction(0)] * nvar
        for var, coef in ((yi(j), dx), (yi(i), -dx), (xi(j), -dy), (xi(i), dy)):
            if var is not None:
                row[var] += coef
        rows.append(row)
    return rows, nvar


def _rationalize(s: Slope):
    if s.is_vertical:
        return Fraction(0), Fraction(1)
    return Fraction(1), Fraction(s.value)


def _points_from_vector(v: Sequence[Fraction], k: int) -> List[Point]:
    pts = [Point(Fraction(0), Fraction(0))]
    for i in range(2, k + 1):
        pts.append(Point(v[i - 2], v[k - 1 + i - 2]))
    return pts


def _realizes(pts: Sequence[Point], w: Witness) -> bool:
    if len(set(pts)) != len(pts):
        return False
    for i, j, s in w.triples:
        t = slope_of(pts[i - 1], pts[j - 1])
        if s.exact and t != s:
            return False
        if not s.exact and t != Slope.from_direction(*_rationalize(s)):
            return False
    return True


def solve_from_witness(w: Witness) -> Optional[List[Point]]:
    """An exact simple point set realizing the triples (point 1 at the origin), or ``None``."""
    _check_shape(w)
    if w.k == 1:
        return [Point(Fraction(0), Fraction(0))]
    rows, nvar = _system(w)
    basis = nullspace(rows, nvar)
    if not basis:
        return None
    candidates = list(basis)
    if len(basis) > 1:
        candidates.append([sum(c * (n + 1) for n, c in enumerate(col)) for col in zip(*basis)])
    for v in candidates:
        pts = _points_from_vector(v, w.k)
        if _realizes(pts, w) and is_simple(pts):
            return pts
    return None


def realize_witness_float(w: Witness, tol: float = FLOAT_TOL) -> Optional[List[Point]]:
    """Float counterpart of :func:`solve_from_witness`.

    The homogeneous system is solved by SVD; a numerically one-dimensional
    null space gives the candidate, which must then reproduce every slope
    within ``tol`` radians and be simple.
    """
    _check_shape(w)
    k = w.k
    if k == 1:
        return [Point(0.0, 0.0)]
    nvar = 2 * (k - 1)
    a = np.zeros((len(w.triples), nvar))
    for r, (i, j, s) in enumerate(w.triples):
        c, sn = math.cos(s.angle), math.sin(s.angle)
        if j > 1:
            a[r, k - 1 + j - 2] += c
            a[r, j - 2] -= sn
        if i > 1:
            a[r, k - 1 + i - 2] -= c
            a[r, i - 2] += sn
    _, sv, vt = np.linalg.svd(a)
    full = np.zeros(nvar)
    full[: sv.size] = sv
    if full[-1] > tol * max(full[0], 1.0) or (nvar > 1 and full[-2] <= tol * max(full[0], 1.0)):
        return None
    v = vt[-1]
    pts = [Point(0.0, 0.0)] + [Point(float(v[i - 2]), float(v[k - 1 + i - 2])) for i in range(2, k + 1)]
    scale = max(max(abs(p.x), abs(p.y)) for p in pts)
    pts = [Point(p.x / scale, p.y / scale) for p in pts]
    for i, j, s in w.triples:
        p, q = pts[i - 1], pts[j - 1]
        if math.hypot(q.x - p.x, q.y - p.y) < tol:
            return None
        if angle_distance(math.atan2(q.y - p.y, q.x - p.x), s.angle) > tol:
            return None
    return pts if is_simple(pts, tol) else None


def verify_witness(inst: ScgdInstance, w: Witness) -> bool:
    """Check a certificate for ``inst``.

    (a) every slope lies in the instance, (b) slopes at a shared index differ,
    (c) the pinned linear system has a nonzero solution and (d) that solution
    gives ``k`` distinct points realizing exactly the listed slopes.  Float
    witnesses go through :func:`realize_witness_float` instead.
    """
    _check_shape(w)
    if w.k != inst.k:
        raise PreconditionError(f"witness is for k = {w.k}, instance has k = {inst.k}")
    if not all(s in inst.slopes for _, _, s in w.triples):
        return False
    if not shared_vertex_distinct(w):
        return False
    if not all(s.exact for _, _, s in w.triples):
        return realize_witness_float(w) is not None
    return solve_from_witness(w) is not None


def decode_witness(w: Witness, lab: Labeling) -> Tuple[int, ...]:
    """Vertices spanned by the decoded edges of a witness."""
    verts = set()
    for _, _, s in w.triples:
        verts.update(decode_slope(s, lab))
    return tuple(sorted(verts))
