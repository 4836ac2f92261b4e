"""Hot loops of the polygon engine, in numba and pure-numpy flavours.

The public names (``affine_order``, ``orbit``, ``chord_angles``,
``sorted_inclusion``) are bound to the backend chosen in :mod:`scgd._accel`.
Both implementations stay importable as ``*_numba`` / ``*_numpy`` so they can
be cross-checked and benchmarked against each other.

Affine maps travel as 6-vectors ``(a, b, c, d, e, f)`` meaning
``(x, y) -> (a x + b y + e, c x + d y + f)``; angles live in ``(-pi/2, pi/2]``.
"""
import math

import numpy as np

from ._accel import BACKEND, HAS_NUMBA, njit

HALF_PI = math.pi / 2
_BLOCK = 64


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def _is_identity(a, b, c, d, e, f, tol):
    return (
        abs(a - 1.0) < tol
        and abs(b) < tol
        and abs(c) < tol
        and abs(d - 1.0) < tol
        and abs(e) < tol
        and abs(f) < tol
    )


@njit(cache=True)
def affine_order_numba(coef, max_order, tol):
    a, b, c, d, e, f = coef[0], coef[1], coef[2], coef[3], coef[4], coef[5]
    pa, pb, pc, pd, pe, pf = a, b, c, d, e, f
    for j in range(1, max_order + 1):
        if _is_identity(pa, pb, pc, pd, pe, pf, tol):
            return j
        # phi^(j+1) = phi o phi^j
        na = a * pa + b * pc
        nb = a * pb + b * pd
        nc = c * pa + d * pc
        nd = c * pb + d * pd
        ne = a * pe + b * pf + e
        nf = c * pe + d * pf + f
        pa, pb, pc, pd, pe, pf = na, nb, nc, nd, ne, nf
    return 0


@njit(cache=True)
def orbit_numba(coef, x0, y0, count):
    out = np.empty((count, 2))
    x, y = x0, y0
    for j in range(count):
        out[j, 0] = x
        out[j, 1] = y
        x, y = coef[0] * x + coef[1] * y + coef[4], coef[2] * x + coef[3] * y + coef[5]
    return out


@njit(cache=True)
def _fold(theta):
    if theta > HALF_PI:
        return theta - math.pi
    if theta <= -HALF_PI:
        return theta + math.pi
    return theta


@njit(cache=True)
def chord_angles_numba(pts):
    d = pts.shape[0]
    out = np.empty(d)
    out[0] = _fold(math.atan2(pts[1, 1] - pts[d - 1, 1], pts[1, 0] - pts[d - 1, 0]))
    for j in range(1, d):
        out[j] = _fold(math.atan2(pts[j, 1] - pts[0, 1], pts[j, 0] - pts[0, 0]))
    return out


@njit(cache=True)
def _cyc(a, b):
    t = abs(a - b) % math.pi
    return min(t, math.pi - t)


@njit(cache=True)
def sorted_inclusion_numba(cand, ref, eps):
    n = ref.shape[0]
    if n == 0:
        return cand.shape[0] == 0
    j = 0
    for i in range(cand.shape[0]):
        a = cand[i]
        while j < n and ref[j] <= a - eps:
            j += 1
        if j < n and abs(ref[j] - a) < eps:
            continue
        # the only other matches are across the vertical wrap
        if _cyc(a, ref[0]) < eps or _cyc(a, ref[n - 1]) < eps:
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# numpy kernels
# ---------------------------------------------------------------------------


def _as_matrix(coef):
    a, b, c, d, e, f = (float(v) for v in coef)
    return np.array([[a, b, e], [c, d, f], [0.0, 0.0, 1.0]])


def _first_powers(m, count):
    out = np.empty((count, 3, 3))
    out[0] = m
    for i in range(1, count):
        out[i] = m @ out[i - 1]
    return out


def affine_order_numpy(coef, max_order, tol):
    """Same contract as the numba kernel; powers advance a block of 64 at a time."""
    max_order = int(max_order)
    if max_order < 1:
        return 0
    m = _as_matrix(coef)
    block = min(_BLOCK, max_order)
    powers = _first_powers(m, block)
    step = powers[-1].copy()
    ident = np.eye(3)[:2]
    offset = 0
    while offset < max_order:
        dev = np.abs(powers[:, :2, :] - ident).max(axis=(1, 2))
        hits = np.flatnonzero(dev < tol)
        if hits.size:
            j = offset + int(hits[0]) + 1
            return j if j <= max_order else 0
        powers = powers @ step
        offset += block
    return 0


def orbit_numpy(coef, x0, y0, count):
    count = int(count)
    out = np.empty((count, 2))
    if count == 0:
        return out
    m = _as_matrix(coef)
    block = min(_BLOCK, count)
    out[0] = (x0, y0)
    for j in range(1, block):
        out[j] = m[:2, :2] @ out[j - 1] + m[:2, 2]
    step = np.linalg.matrix_power(m, block)
    lin, tr = step[:2, :2], step[:2, 2]
    for start in range(block, count, block):
        stop = min(start + block, count)
        out[start:stop] = out[start - block : stop - block] @ lin.T + tr
    return out


def _fold_array(theta):
    theta = np.where(theta > HALF_PI, theta - math.pi, theta)
    return np.where(theta <= -HALF_PI, theta + math.pi, theta)


def chord_angles_numpy(pts):
    pts = np.asarray(pts, dtype=np.float64)
    d = pts.shape[0]
    out = np.empty(d)
    diff = pts[1:] - pts[0]
    out[1:] = np.arctan2(diff[:, 1], diff[:, 0])
    out[0] = math.atan2(pts[1, 1] - pts[d - 1, 1], pts[1, 0] - pts[d - 1, 0])
    return _fold_array(out)


def _cyclic_distance(a, b):
    t = np.abs(a - b) % math.pi
    return np.minimum(t, math.pi - t)


def sorted_inclusion_numpy(cand, ref, eps):
    cand = np.asarray(cand, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if ref.size == 0:
        return cand.size == 0
    idx = np.searchsorted(ref, cand)
    n = ref.size
    best = np.minimum(
        _cyclic_distance(cand, ref[np.clip(idx, 0, n - 1)]),
        _cyclic_distance(cand, ref[np.clip(idx - 1, 0, n - 1)]),
    )
    best = np.minimum(best, np.minimum(_cyclic_distance(cand, ref[0]), _cyclic_distance(cand, ref[-1])))
    return bool(np.all(best < eps))


# ---------------------------------------------------------------------------
# shared helpers and backend binding
# ---------------------------------------------------------------------------


def ascending_cyclic(angles, eps):
    """Return ``angles`` sorted ascending, or ``None`` if two of them coincide.

    A cyclically monotone input (the chord sequence of a convex orbit) is
    rotated in O(d); anything else falls back to a sort.
    """
    angles = np.asarray(angles, dtype=np.float64)
    d = angles.size
    if d == 0:
        return angles
    start = int(np.argmin(angles))
    rot = np.roll(angles, -start)
    if d > 1 and not np.all(np.diff(rot) > 0):
        rev = np.roll(angles[::-1], -int(np.argmin(angles[::-1])))
        rot = rev if np.all(np.diff(rev) > 0) else np.sort(angles)
    if d > 1:
        gaps = np.diff(rot)
        if gaps.min() < eps or (math.pi - (rot[-1] - rot[0])) < eps:
            return None
    return rot


if BACKEND == "numba":
    affine_order = affine_order_numba
    orbit = orbit_numba
    chord_angles = chord_angles_numba
    sorted_inclusion = sorted_inclusion_numba
else:
    affine_order = affine_order_numpy
    orbit = orbit_numpy
    chord_angles = chord_angles_numpy
    sorted_inclusion = sorted_inclusion_numpy

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "affine_order",
    "orbit",
    "chord_angles",
    "sorted_inclusion",
    "ascending_cyclic",
]
