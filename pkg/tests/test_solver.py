import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scgd.affreg import AffRegPolygon, random_affreg, regular_ngon
from scgd.errors import BudgetError, PreconditionError
from scgd.geometry import Point, Slope, SlopeSet, angle_distance, find_homothety, is_simple, slope_of, slope_set
from scgd.reduction import ScgdInstance, verify_witness
from scgd.solver import (
    NO,
    YES,
    SolverConfig,
    brute_force_scgd,
    certificate_slopes,
    monte_carlo_round,
    solve_monte_carlo,
    solve_restricted,
    solve_small,
)

from conftest import P


def exact_set(values):
    return SlopeSet(Slope.from_value(Fraction(v)) if v != "inf" else Slope.vertical() for v in values)


def with_noise(poly: AffRegPolygon, count: int, rng):
    s = poly.slope_set()
    extra = []
    while len(extra) < count:
        a = float(rng.uniform(-math.pi / 2, math.pi / 2))
        if min(angle_distance(a, b) for b in list(s.angles) + extra) > 1e-3:
            extra.append(a)
    return SlopeSet(list(s) + [Slope.from_angle(a) for a in extra])


def certificate_ok(ans, s, k, tol=1e-8):
    pts = ans.certificate_points()
    if len(pts) < k:
        return False
    for p, q in itertools.combinations(pts, 2):
        a = math.atan2(float(q.y - p.y), float(q.x - p.x))
        if min(angle_distance(a, b) for b in s.angles) > tol:
            return False
    return True


# --- configuration and regimes --------------------------------------------------


def test_config_validation():
    with pytest.raises(PreconditionError):
        SolverConfig(c1=-1)
    with pytest.raises(PreconditionError):
        SolverConfig(mc_reps=0)
    with pytest.raises(PreconditionError):
        SolverConfig(epsilon=0.0)


def test_regime_errors():
    s = regular_ngon(7).slope_set()
    with pytest.raises(PreconditionError, match="solve_small"):
        solve_restricted(s, 4)
    wide = with_noise(regular_ngon(7), 6, np.random.default_rng(0))
    with pytest.raises(PreconditionError, match="brute_force"):
        solve_restricted(wide, 7)


# --- deterministic solver ----------------------------------------------------------


def test_heptagon_yes():
    s = regular_ngon(7).slope_set()
    ans = solve_restricted(s, 7)
    assert ans.verdict == YES and ans
    assert ans.certificate.order == 7
    assert certificate_ok(ans, s, 7)
    assert not ans.no_is_conditional


def test_integer_slopes_no():
    ans = solve_restricted(exact_set(range(7)), 7)
    assert ans.verdict == NO and not ans.no_is_conditional
    assert ans.mode == "exact"


def test_too_few_slopes():
    s = regular_ngon(7).slope_set()
    ans = solve_restricted(s, 8, SolverConfig(c1=0))
    assert ans.verdict == NO and not ans.no_is_conditional


def test_nine_gon_plus_noise(rng):
    poly = random_affreg(9, rng)
    s = with_noise(poly, 2, rng)
    ans = solve_restricted(s, 8, SolverConfig(c1=5))
    assert ans and ans.certificate.order == 9
    assert certificate_ok(ans, s, 8)
    assert len(ans.succeeding_window) == 4


def test_conditional_flag():
    rng = np.random.default_rng(4)
    s = SlopeSet(Slope.from_angle(a) for a in rng.uniform(-1.5, 1.5, 9))
    ans = solve_restricted(s, 7)
    assert ans.verdict == NO and ans.no_is_conditional
    ans = solve_restricted(SlopeSet(list(s)[:8]), 7)
    assert ans.verdict == NO and not ans.no_is_conditional


@given(st.integers(5, 24), st.integers(0, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_restricted_finds_planted_polygon(d, r, seed):
    rng = np.random.default_rng(seed)
    k = d
    if d + r > 2 * k - 4:
        r = max(0, 2 * k - 4 - d)
    s = with_noise(random_affreg(d, rng), r, rng)
    ans = solve_restricted(s, k)
    assert ans
    assert certificate_ok(ans, s, k)
    # the window holds at least four slopes of the certificate
    cert = certificate_slopes(ans)
    window = [s[i] for i in range(len(s) - k + 4)]
    assert sum(min(angle_distance(w.angle, c) for c in cert.angles) < 1e-8 for w in window) >= 4


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20)
def test_no_false_yes_on_random_slopes(seed):
    rng = np.random.default_rng(seed)
    s = SlopeSet(Slope.from_angle(a) for a in rng.uniform(-1.5, 1.5, 8))
    ans = solve_restricted(s, 6)
    if ans:
        assert certificate_ok(ans, s, 6)


# --- oracle agreement ---------------------------------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_restricted_agrees_with_oracle_n_le_k_plus_1(seed):
    rng = np.random.default_rng(seed)
    poly = random_affreg(5, rng)
    cases = [poly.slope_set(), with_noise(poly, 1, rng), SlopeSet(Slope.from_angle(a) for a in rng.uniform(-1.5, 1.5, 6))]
    for s in cases:
        fast = solve_restricted(s, 5)
        w = brute_force_scgd(s, 5, 10**9)
        assert bool(fast) == (w is not None)
        if w is not None:
            assert verify_witness(ScgdInstance(s, 5), w)


def test_snapshot_rational_pentagon():
    # float slopes snapped to rationals stay realizable only at tolerance
    s = regular_ngon(5).slope_set()
    snap = [Fraction(x.value).limit_denominator(10**9) for x in s if not x.is_vertical]
    ans = solve_restricted(s, 5)
    assert ans
    finite = [a for a in certificate_slopes(ans) if abs(a.value) < 1e6]
    assert all(min(abs(a.value - float(b)) for b in snap) < 1e-8 for a in finite)


# --- Monte Carlo --------------------------------------------------------------------


def test_mc_small_falls_back():
    s = regular_ngon(9).slope_set()
    cfg = SolverConfig(mc_reps=1, rng_seed=3)
    assert solve_monte_carlo(s, 9, cfg).verdict == solve_restricted(s, 9, cfg).verdict


def test_mc_seed_reproducible():
    rng = np.random.default_rng(8)
    s = with_noise(random_affreg(20, rng), 4, rng)
    cfg = SolverConfig(mc_reps=3, rng_seed=11)
    a = solve_monte_carlo(s, 20, cfg)
    b = solve_monte_carlo(s, 20, cfg)
    assert a.verdict == b.verdict and a.succeeding_window == b.succeeding_window


def test_mc_single_round_detection_rate():
    rng = np.random.default_rng(21)
    d, r = 24, 6
    s = with_noise(random_affreg(d, rng), r, rng)
    n = len(s)
    hits = sum(monte_carlo_round(s, d - 2, start) is not None for start in range(n))
    # the windows starting at the noise slopes are the only possible misses
    assert hits / n >= 1 / 3


def test_mc_no_instances_never_yes():
    rng = np.random.default_rng(5)
    for _ in range(10):
        s = SlopeSet(Slope.from_angle(a) for a in rng.uniform(-1.5, 1.5, 14))
        assert solve_monte_carlo(s, 9, SolverConfig(mc_reps=3), rng).verdict == NO


# --- small k and the oracle ---------------------------------------------------------


def test_small_k():
    assert solve_small(exact_set([0, 1]), 3).verdict == NO
    ans = solve_small(exact_set([0, 1, "inf"]), 3)
    assert ans and find_homothety(list(ans.certificate), [P(0, 0), P(1, 0), P(1, 1)]) is not None
    assert solve_small(exact_set([5]), 2)
    assert solve_small(exact_set([]), 1)
    assert solve_small(exact_set([]), 0)
    assert not solve_small(exact_set([]), 2)
    with pytest.raises(PreconditionError):
        solve_small(exact_set([1]), 5)


def test_oracle_trapezoid():
    trap = [P(0, 0), P(4, 0), P(3, 1), P(1, 1)]
    s = slope_set(trap)
    w = brute_force_scgd(s, 4)
    assert w is not None and verify_witness(ScgdInstance(s, 4), w)


def test_oracle_sextuple_all_orderings():
    s = exact_set([1, 2, 3, 4, 5, 7])
    w = brute_force_scgd(s, 4)
    # an independent check of every assignment decides the same way
    from scgd.generic import iter_assignments, realize_quadruple

    slopes = list(s)
    any_real = any(realize_quadruple([slopes[i] for i in a]) is not None for a in iter_assignments(6))
    assert (w is not None) == any_real


def test_oracle_triangle_and_trivial():
    w = brute_force_scgd(exact_set([-2, 0, 9]), 3)
    assert w is not None and len(w.triples) == 3
    assert brute_force_scgd(exact_set([1]), 1).triples == ()


def test_oracle_budget():
    with pytest.raises(BudgetError, match="too large"):
        brute_force_scgd(exact_set(range(20)), 6)


@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=3, max_size=6, unique=True))
@settings(max_examples=30)
def test_small_agrees_with_oracle(values):
    s = exact_set(values)
    for k in (3, 4):
        ans = solve_small(s, k)
        assert bool(ans) == (brute_force_scgd(s, k) is not None)
        if ans:
            pts = list(ans.certificate)
            assert len(pts) == k and is_simple(pts)
            assert set(slope_set(pts)) <= set(s)
