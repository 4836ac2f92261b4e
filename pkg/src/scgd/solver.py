"""SCGD decision procedures: restricted deterministic, Monte-Carlo, small k and a brute-force oracle."""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .affreg import AffRegPolygon, four_slopes_query, polygon_slopes_within
from .errors import BudgetError, PreconditionError
from .geometry import EPS, Point, Slope, SlopeSet, intersect, slope_set
from .reduction import ScgdInstance, Witness, realize_witness_float, solve_from_witness, verify_witness

log = logging.getLogger(__name__)

ORACLE_BUDGET = 10**7
MC_WINDOW = 12
Q_REL_TOL = 1e-6

YES = "YES"
NO = "NO"


@dataclass(frozen=True)
class SolverConfig:
    c1: int = 4
    epsilon: float = EPS
    mc_reps: int = 12
    rng_seed: int = 0

    def __post_init__(self):
        if self.c1 < 0:
            raise PreconditionError("c1 must be non-negative")
        if self.mc_reps < 1:
            raise PreconditionError("mc_reps must be at least 1")
        if not self.epsilon > 0:
            raise PreconditionError("epsilon must be positive")


Certificate = Union[AffRegPolygon, Tuple[Point, ...]]


@dataclass(frozen=True)
class SolverAnswer:
    verdict: str
    certificate: Optional[Certificate] = None
    no_is_conditional: bool = False
    mode: str = "exact"
    succeeding_window: Optional[Tuple[int, ...]] = None
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.verdict == YES

    def certificate_points(self) -> Optional[List[Point]]:
        c = self.certificate
        if c is None:
            return None
        if isinstance(c, AffRegPolygon):
            return c.points()
        return list(c)


def _mode(s: SlopeSet) -> str:
    return "exact" if s.exact else "float"


def _certified_yes(s: SlopeSet, k: int, poly: AffRegPolygon, eps: float, window) -> Optional[SolverAnswer]:
    """Wrap ``poly`` as a YES answer after re-checking size and slope inclusion."""
    if len(poly) < k or not polygon_slopes_within(poly, s, eps):
        return None
    return SolverAnswer(YES, poly, False, _mode(s), tuple(window))


def _check_regime(s: SlopeSet, k: int, cfg: SolverConfig) -> None:
    n = len(s)
    if k < 5:
        raise PreconditionError(f"k = {k} < 5: use solve_small")
    if n > 2 * k - cfg.c1:
        raise PreconditionError(
            f"n = {n} > 2k - c1 = {2 * k - cfg.c1}: outside the conjecture regime, use brute_force_scgd"
        )


def _no(s: SlopeSet, k: int) -> SolverAnswer:
    n = len(s)
    return SolverAnswer(NO, None, not (n <= k + 1), _mode(s))


def solve_restricted(s: SlopeSet, k: int, cfg: SolverConfig = SolverConfig()) -> SolverAnswer:
    """Deterministic solver for ``5 <= k`` and ``n <= 2k - c1``.

    With ``r = n - k`` every admissible polygon uses at least four of the first
    ``r + 4`` slopes, and those four are consecutive among its own slopes, so
    trying every ordered 4-subsequence of that prefix is exhaustive.
    """
    _check_regime(s, k, cfg)
    n = len(s)
    if n < k:
        return SolverAnswer(NO, None, False, _mode(s))
    r = n - k
    prefix = list(range(r + 4))
    for idx in itertools.combinations(prefix, 4):
        poly = four_slopes_query(s, k, [s[i] for i in idx], cfg.epsilon)
        if poly is None:
            continue
        ans = _certified_yes(s, k, poly, cfg.epsilon, idx)
        if ans is not None:
            return ans
    return _no(s, k)


def monte_carlo_round(s: SlopeSet, k: int, start: int, eps: float = EPS) -> Optional[SolverAnswer]:
    """One repetition: the 12-slope cyclic window from ``start`` and its 495 4-subsequences."""
    n = len(s)
    window = [(start + i) % n for i in range(MC_WINDOW)]
    for pos in itertools.combinations(range(MC_WINDOW), 4):
        idx = [window[p] for p in pos]
        poly = four_slopes_query(s, k, [s[i] for i in idx], eps)
        if poly is None:
            continue
        ans = _certified_yes(s, k, poly, eps, idx)
        if ans is not None:
            return ans
    return None


def solve_monte_carlo(
    s: SlopeSet,
    k: int,
    cfg: SolverConfig = SolverConfig(),
    rng: Optional[np.random.Generator] = None,
) -> SolverAnswer:
    """Randomized solver; YES answers are certified, NO may be wrong with probability <= (2/3)**reps.

    Instances with fewer than 12 slopes are handed to :func:`solve_restricted`.
    """
    _check_regime(s, k, cfg)
    n = len(s)
    if n < MC_WINDOW:
        return solve_restricted(s, k, cfg)
    if rng is None:
        rng = np.random.default_rng(cfg.rng_seed)
    for rep in range(cfg.mc_reps):
        start = int(rng.integers(n))
        log.debug("repetition %d: window starts at slope %d", rep, start)
        ans = monte_carlo_round(s, k, start, cfg.epsilon)
        if ans is not None:
            return ans
    return _no(s, k)


# ---------------------------------------------------------------------------
# small k and the oracle
# ---------------------------------------------------------------------------


def _unit(s: Slope):
    return (s.dx, s.dy)


def _origin(exact: bool) -> Point:
    return Point(0, 0) if exact else Point(0.0, 0.0)


def _triangle(a: Slope, b: Slope, c: Slope) -> Tuple[Point, ...]:
    p0 = _origin(a.exact)
    p1 = Point(p0.x + a.dx, p0.y + a.dy)
    return (p0, p1, intersect(p0, _unit(b), p1, _unit(c)))


def solve_small(s: SlopeSet, k: int) -> SolverAnswer:
    """Direct answers for ``k <= 4``; ``k = 4`` goes through the brute-force oracle."""
    if k > 4:
        raise PreconditionError("solve_small handles k <= 4")
    n = len(s)
    mode = _mode(s)
    if k <= 0:
        return SolverAnswer(YES, (), False, mode)
    if k == 1:
        return SolverAnswer(YES, (_origin(s.exact),), False, mode)
    if k == 2:
        if n < 1:
            return SolverAnswer(NO, None, False, mode)
        p0 = _origin(s.exact)
        return SolverAnswer(YES, (p0, Point(p0.x + s[0].dx, p0.y + s[0].dy)), False, mode)
    if k == 3:
        if n < 3:
            return SolverAnswer(NO, None, False, mode)
        return SolverAnswer(YES, _triangle(s[0], s[1], s[2]), False, mode, (0, 1, 2))
    w = brute_force_scgd(s, 4)
    if w is None:
        return SolverAnswer(NO, None, False, mode)
    pts = solve_from_witness(w) if s.exact else realize_witness_float(w)
    return SolverAnswer(YES, tuple(pts), False, mode, witness=w)


def _q_value(s: Slope):
    if s.is_vertical:
        return None
    if s.exact:
        return Fraction(s.dy, s.dx)
    # near-vertical float slopes are too ill-conditioned to filter on
    return None if abs(s.value) > 1e6 else float(s.value)


def _q_vanishes(z: Sequence[Optional[Fraction]], rel: float = 0.0) -> bool:
    if any(v is None for v in z):
        return True
    z1, z2, z3, z4, z5, z6 = z
    lhs = (z3 - z5) * (z6 - z2) * (z4 - z1)
    rhs = (z2 - z4) * (z5 - z1) * (z6 - z3)
    if not rel:
        return lhs == rhs
    return abs(lhs - rhs) <= rel * (abs(lhs) + abs(rhs))


def brute_force_scgd(s: SlopeSet, k: int, budget: int = ORACLE_BUDGET) -> Optional[Witness]:
    """First witness (in enumeration order) for ``(s, k)`` that passes :func:`verify_witness`.

    Pairs are filled vertex by vertex; slopes at a shared vertex must differ and
    every completed 4-subset must satisfy the quadruple polynomial identity
    (to relative tolerance ``Q_REL_TOL`` for float slopes).
    """
    n = len(s)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if k == 1:
        return Witness(1, ())
    m = k * (k - 1) // 2
    if n**m > budget:
        raise BudgetError(f"instance too large for oracle: {n}^{m} candidates exceed {budget}")
    inst = ScgdInstance(s, k)
    zval = [_q_value(x) for x in s]
    rel = 0.0 if s.exact else Q_REL_TOL
    pairs = [(i, j) for j in range(k) for i in range(j)]
    assign = {}

    def quads_ok(j: int) -> bool:
        for a, b, c in itertools.combinations(range(j), 3):
            q = (a, b, c, j)
            z = [zval[assign[(q[x], q[y])]] for x, y in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
            if not _q_vanishes(z, rel):
                return False
        return True

    def rec(pos: int):
        if pos == m:
            w = Witness(k, tuple((i + 1, j + 1, s[assign[(i, j)]]) for i, j in sorted(assign)))
            return w if verify_witness(inst, w) else None
        i, j = pairs[pos]
        used = {assign[p] for p in assign if (i in p or j in p)}
        for v in range(n):
            if v in used:
                continue
            assign[(i, j)] = v
            if i == j - 1 and j >= 3 and not quads_ok(j):
                del assign[(i, j)]
                continue
            found = rec(pos + 1)
            del assign[(i, j)]
            if found is not None:
                return found
        return None

    return rec(0)


def certificate_slopes(ans: SolverAnswer, eps: float = EPS) -> Optional[SlopeSet]:
    pts = ans.certificate_points()
    if not pts or len(pts) < 2:
        return None
    return slope_set(pts, eps)
