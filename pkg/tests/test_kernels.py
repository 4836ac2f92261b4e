import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scgd import kernels
from scgd.affreg import random_affreg, regular_ngon


def brute_chords(v):
    d = len(v)
    out = [math.atan2(v[1][1] - v[d - 1][1], v[1][0] - v[d - 1][0])]
    out += [math.atan2(v[i][1] - v[0][1], v[i][0] - v[0][0]) for i in range(1, d)]
    return np.array([(a + math.pi / 2) % math.pi - math.pi / 2 for a in out])


def fold_close(a, b, tol=1e-12):
    diff = np.abs(np.asarray(a) - np.asarray(b)) % math.pi
    return np.all(np.minimum(diff, math.pi - diff) < tol)


@given(st.integers(3, 80), st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_backends_agree(d, seed):
    poly = random_affreg(d, np.random.default_rng(seed))
    coef = np.array([float(c) for c in poly.generator.coefficients])
    v = np.ascontiguousarray(poly.vertices)
    assert kernels.affine_order_numba(coef, 200, 1e-6) == kernels.affine_order_numpy(coef, 200, 1e-6) == d
    o1 = kernels.orbit_numba(coef, v[0, 0], v[0, 1], d)
    o2 = kernels.orbit_numpy(coef, v[0, 0], v[0, 1], d)
    assert np.allclose(o1, o2, atol=1e-9) and np.allclose(o1, v, atol=1e-8)
    c1, c2 = kernels.chord_angles_numba(v), kernels.chord_angles_numpy(v)
    assert fold_close(c1, c2) and fold_close(c1, brute_chords(v))
    ref = np.sort(c1)
    shifted = ref.copy()
    shifted[0] += 1e-4
    for cand in (ref, shifted):
        assert kernels.sorted_inclusion_numba(cand, ref, 1e-9) == kernels.sorted_inclusion_numpy(cand, ref, 1e-9)
    assert kernels.sorted_inclusion_numba(ref, ref, 1e-9)
    assert not kernels.sorted_inclusion_numpy(shifted, ref, 1e-9)


def test_infinite_order_both_backends():
    shear = np.array([1.0, 0.5, 0.0, 1.0, 0.0, 0.0])
    assert kernels.affine_order_numba(shear, 500, 1e-6) == kernels.affine_order_numpy(shear, 500, 1e-6) == 0


def test_ascending_cyclic():
    a = np.array([0.3, 0.9, -1.2, -0.4])
    assert list(kernels.ascending_cyclic(a, 1e-9)) == sorted(a)
    assert kernels.ascending_cyclic(np.array([0.1, 0.1, 0.5]), 1e-9) is None
    rev = kernels.ascending_cyclic(a[::-1].copy(), 1e-9)
    assert list(rev) == sorted(a)


def test_inclusion_wraps_around_vertical():
    ref = np.array([-math.pi / 2 + 1e-12, 0.0, 1.0])
    cand = np.array([math.pi / 2 - 1e-12])
    assert kernels.sorted_inclusion_numpy(cand, ref, 1e-9)
    assert kernels.sorted_inclusion_numba(cand, ref, 1e-9)


def test_numpy_backend_selected_by_env():
    env = dict(os.environ, SCGD_BACKEND="numpy")
    code = (
        "from scgd import kernels; from scgd.affreg import regular_ngon; from scgd.solver import solve_restricted;"
        "print(kernels.BACKEND, kernels.affine_order is kernels.affine_order_numpy,"
        " solve_restricted(regular_ngon(9).slope_set(), 9).verdict)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True", "YES"]


def test_default_backend_is_numba():
    assert kernels.BACKEND == ("numba" if kernels.HAS_NUMBA else "numpy")
