import math

import numpy as np
import pytest

from scgd import bench


def test_fit_exponent_recovers_power():
    ns = [2**i for i in range(6, 12)]
    assert bench.fit_exponent(ns, [3e-7 * n**1.5 for n in ns]) == pytest.approx(1.5)


def test_polygon_instance_shape():
    s, d = bench.polygon_instance(40, 4, np.random.default_rng(0), 1e-9)
    assert len(s) == 40 and d == 36


def test_run_bench_rows():
    rows = bench.run_bench("polygon-plus-noise", [32, 64], reps=1, seed=1)
    assert {r.solver for r in rows} == {"restricted", "monte-carlo"}
    assert all(r.verdicts == "Y" for r in rows)
    assert set(bench.exponents(rows)) == {"restricted", "monte-carlo"}
    csv = bench.to_csv(rows)
    assert csv.count("\n") == len(rows) + 1


def test_reduction_family():
    rows = bench.run_bench("reduction", [6, 7], reps=1)
    assert all(r.verdicts == "Y" for r in rows)


def test_unknown_family():
    with pytest.raises(ValueError):
        bench.run_bench("nope", [8])


def test_compare_backends_agree():
    rows = bench.compare_backends([32], reps=1)
    assert {r["kernel"] for r in rows} == {"affine_order", "orbit", "chord_angles", "sorted_inclusion"}
    assert all(r["agree"] for r in rows)


def test_subquery_count(monkeypatch):
    import scgd.solver as solver
    from scgd.geometry import Slope, SlopeSet

    calls = []
    monkeypatch.setattr(solver, "four_slopes_query", lambda *a, **kw: calls.append(1))
    counts = {}
    for r in (2, 4, 8):
        calls.clear()
        k = 20
        s = SlopeSet(Slope.from_angle(a) for a in np.linspace(-1.5, 1.5, k + r))
        assert solver.solve_restricted(s, k).verdict == "NO"
        counts[r] = len(calls)
    assert counts == {r: math.comb(r + 4, 4) for r in (2, 4, 8)}
