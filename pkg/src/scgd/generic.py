"""Slope-generic point sets on the parabola and a brute-force genericity checker."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .geometry import (
    Point,
    Slope,
    dual,
    embeds,
    has_distinct_slopes,
    intersect,
    is_simple,
    q_poly,
    same_slope,
    slope_of,
    slope_set,
)
from .sidon import BhSequence, greedy_bh

log = logging.getLogger(__name__)

DEFAULT_BASE = 50

#: vertex pairs in the order (m12, m13, m14, m23, m24, m34)
PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
#: position of the vertex-disjoint pair
OPPOSITE = (5, 4, 3, 2, 1, 0)
#: positions sharing a vertex with each position
CONFLICTS = tuple(
    tuple(j for j, q in enumerate(PAIRS) if j != i and set(p) & set(q)) for i, p in enumerate(PAIRS)
)


def _relabelings():
    out = []
    for perm in itertools.permutations(range(4)):
        out.append(tuple(PAIR_INDEX[tuple(sorted((perm[a], perm[b])))] for a, b in PAIRS))
    return tuple(out)


#: for every relabeling of the four vertices, where each position is sent
RELABELINGS = _relabelings()


@dataclass(frozen=True)
class GenericSet:
    base: int
    exponents: BhSequence
    points: Tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.points)

    def slope(self, i: int, j: int) -> int:
        return self.base ** self.exponents[i] + self.base ** self.exponents[j]


def build_generic(count: int, base: int = DEFAULT_BASE) -> GenericSet:
    """Points ``(base**c, base**(2c))`` over the greedy B_3-sequence ``c``."""
    if count < 1:
        raise PreconditionError("count must be at least 1")
    if base != DEFAULT_BASE:
        log.warning("slope-genericity is only established for base %d (got %d)", DEFAULT_BASE, base)
    c = greedy_bh(3, count)
    pts = tuple(Point(base**e, base ** (2 * e)) for e in c)
    return GenericSet(base, c, pts)


def _shared_vertex_distinct(m: Sequence[Slope]) -> bool:
    return all(m[i] != m[j] for i in range(6) for j in CONFLICTS[i] if j > i)


def _step(s: Slope):
    return (s.dx, s.dy)


def realize_quadruple(m: Sequence[Slope]) -> Optional[Tuple[Point, ...]]:
    """A simple quadruple with ``slope(EiEj) = m_ij``, or ``None`` if none exists.

    ``E1`` is pinned at the origin and ``E2`` one unit along ``m12`` (unit
    x-distance, or straight up when vertical); ``E3`` and ``E4`` are line
    intersections, after which ``m34`` is checked.
    """
    m = tuple(m)
    if len(m) != 6:
        raise PreconditionError("need six slopes (m12, m13, m14, m23, m24, m34)")
    if not _shared_vertex_distinct(m):
        raise PreconditionError("slopes at a shared vertex must be pairwise distinct")
    m12, m13, m14, m23, m24, m34 = m
    exact = m12.exact
    zero, one = (0, 1) if exact else (0.0, 1.0)
    e1 = Point(zero, zero)
    e2 = Point(zero, one) if m12.is_vertical else Point(one, m12.value)
    e3 = intersect(e1, _step(m13), e2, _step(m23))
    e4 = intersect(e1, _step(m14), e2, _step(m24))
    if e3 == e4:
        return None
    if not same_slope(slope_of(e3, e4), m34):
        return None
    e = (e1, e2, e3, e4)
    if len(set(e)) != 4 or not is_simple(e):
        return None
    return e


def _canonical(assignment: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(tuple(assignment[r[i]] for i in range(6)) for r in RELABELINGS)


def iter_assignments(n: int):
    """Index tuples over ``range(n)`` for positions (m12..m34) with shared-vertex distinctness.

    Opposite positions may repeat.  Yields in lexicographic order.
    """
    cur = [0] * 6

    def rec(pos):
        if pos == 6:
            yield tuple(cur)
            return
        banned = {cur[j] for j in CONFLICTS[pos] if j < pos}
        for v in range(n):
            if v not in banned:
                cur[pos] = v
                yield from rec(pos + 1)

    return rec(0)


@dataclass
class GenericCheck:
    """Outcome of :func:`check_slope_generic`; truthy iff no counterexample was found."""

    counterexample: Optional[Tuple[Point, ...]] = None
    counterexamples: List[Tuple[Point, ...]] = field(default_factory=list)
    realized: List[Tuple[Tuple[int, ...], Tuple[Point, ...]]] = field(default_factory=list)
    assignments_checked: int = 0

    @property
    def generic(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.generic


def check_slope_generic(a: Sequence[Point], *, find_all: bool = False) -> GenericCheck:
    """Exhaustively test the slope-generic condition on a small point set.

    Every assignment of slopes of ``a`` to the six vertex pairs of a quadruple
    (shared-vertex slopes distinct) is considered once per relabeling orbit;
    realizable ones must embed into ``a`` directly or through their dual.
    """
    pts = list(a)
    if not has_distinct_slopes(pts):
        raise PreconditionError("slope-generic check needs a set with distinct slopes")
    result = GenericCheck()
    if len(pts) < 4:
        return result
    slopes = list(slope_set(pts))
    finite = all(not s.is_vertical for s in slopes)
    values = [s.value for s in slopes] if finite else None
    seen = set()
    for idx in iter_assignments(len(slopes)):
        result.assignments_checked += 1
        if finite and q_poly([values[i] for i in idx]) != 0:
            continue
        canon = _canonical(idx)
        if canon in seen:
            continue
        seen.add(canon)
        e = realize_quadruple([slopes[i] for i in canon])
        if e is None:
            continue
        result.realized.append((canon, e))
        if embeds(e, pts) is not None or embeds(dual(e), pts) is not None:
            continue
        if result.counterexample is None:
            result.counterexample = e
        result.counterexamples.append(e)
        if not find_all:
            break
    return result


def exponent_pairs(g: GenericSet) -> Dict[int, FrozenSet[int]]:
    """Map each slope value of ``g`` to the pair of point indices producing it."""
    return {g.slope(i, j): frozenset((i, j)) for i, j in itertools.combinations(range(len(g)), 2)}


def _matches_direct(pairs: Sequence[FrozenSet[int]]) -> bool:
    ys = []
    for v in range(4):
        common = frozenset.intersection(*(pairs[i] for i, p in enumerate(PAIRS) if v in p))
        if len(common) != 1:
            return False
        ys.append(next(iter(common)))
    if len(set(ys)) != 4:
        return False
    return all(pairs[i] == frozenset((ys[p], ys[q])) for i, (p, q) in enumerate(PAIRS))


def classify_quadruple(m: Sequence[Slope], g: GenericSet) -> FrozenSet[str]:
    """Which of the two index patterns the slopes ``m`` follow over ``g``.

    ``"i"``: some four points ``B`` of ``g`` have ``slope(BiBj) = m_ij``.
    ``"ii"``: the same holds with every pair replaced by its vertex-disjoint pair,
    which is the slope pattern of the dual quadruple.
    """
    lookup = exponent_pairs(g)
    pairs = []
    for s in m:
        if s.is_vertical or not s.exact or s.dx != 1 or s.dy not in lookup:
            return frozenset()
        pairs.append(lookup[s.dy])
    cases = set()
    if _matches_direct(pairs):
        cases.add("i")
    if _matches_direct([pairs[OPPOSITE[i]] for i in range(6)]):
        cases.add("ii")
    return frozenset(cases)
