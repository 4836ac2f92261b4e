"""Wall-clock scaling of the solvers and of the numba/numpy kernels.

Timings are medians over ``reps`` runs of freshly seeded instances; the
log-log least-squares slope of median time against ``n`` is reported as the
fitted exponent.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from . import kernels
from .affreg import random_affreg, regular_ngon
from .geometry import Slope, SlopeSet
from .reduction import Graph, encode_clique, verify_witness, witness_from_vertices
from .solver import SolverConfig, solve_monte_carlo, solve_restricted

log = logging.getLogger(__name__)

FAMILIES = ("polygon-exact", "polygon-plus-noise", "reduction")
SOLVERS = ("restricted", "monte-carlo")


@dataclass
class BenchRow:
    family: str
    solver: str
    backend: str
    n: int
    r: int
    k: int
    reps: int
    median_s: float
    verdicts: str


def polygon_instance(n: int, r: int, rng: np.random.Generator, eps: float):
    """Slopes of a random affinely-regular ``(n - r)``-gon plus ``r`` extra slopes.

    The extra slopes sit below the polygon's smallest slope, so they fill the
    prefix the deterministic solver scans and it has to try every subquery.
    """
    d = n - r
    poly = random_affreg(d, rng)
    s = poly.slope_set(eps)
    if r:
        lo = -math.pi / 2
        hi = float(s.angles[0])
        noise = lo + (hi - lo) * (np.arange(1, r + 1) / (r + 1))
        s = SlopeSet(list(s) + [Slope.from_angle(a) for a in noise], eps)
    return s, d


def random_graph_with_clique(n: int, rng: np.random.Generator, p: float = 0.3, size: int = 5):
    verts = sorted(int(v) for v in rng.choice(n, size=size, replace=False))
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p}
    edges |= {(u, v) for i, u in enumerate(verts) for v in verts[i + 1 :]}
    return Graph(n, edges), tuple(verts)


def _median_time(fn: Callable[[], object]) -> tuple:
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def fit_exponent(ns: Sequence[float], times: Sequence[float]) -> float:
    """Slope of ``log t`` against ``log n`` by least squares."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.maximum(np.asarray(times, dtype=float), 1e-9))
    return float(np.polyfit(x, y, 1)[0])


def _warm_up(eps: float) -> None:
    s = regular_ngon(16).slope_set(eps)
    solve_restricted(s, 16, SolverConfig(epsilon=eps))


def run_bench(
    family: str,
    sizes: Iterable[int],
    reps: int = 3,
    seed: int = 0,
    r: int = 4,
    solvers: Sequence[str] = SOLVERS,
    eps: float = 1e-9,
) -> List[BenchRow]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    rng = np.random.default_rng(seed)
    rows = []
    if family == "reduction":
        for n in sizes:
            times, verdicts = [], []
            for _ in range(reps):
                g, clique = random_graph_with_clique(n, rng)

                def job():
                    inst, lab = encode_clique(g, 5)
                    return verify_witness(inst, witness_from_vertices(clique, lab))

                t, ok = _median_time(job)
                times.append(t)
                verdicts.append("YES" if ok else "NO")
            rows.append(BenchRow(family, "encode+verify", kernels.BACKEND, n, 0, 5, reps, float(np.median(times)), "".join(v[0] for v in verdicts)))
        return rows
    _warm_up(eps)
    rr = 0 if family == "polygon-exact" else r
    cfg = SolverConfig(epsilon=eps, rng_seed=seed)
    for n in sizes:
        instances = [polygon_instance(n, rr, rng, eps) for _ in range(reps)]
        for solver in solvers:
            times, verdicts = [], []
            for i, (s, k) in enumerate(instances):
                if solver == "restricted":
                    t, ans = _median_time(lambda: solve_restricted(s, k, cfg))
                else:
                    sub = np.random.default_rng([seed, n, i])
                    t, ans = _median_time(lambda: solve_monte_carlo(s, k, cfg, sub))
                times.append(t)
                verdicts.append(ans.verdict)
            rows.append(
                BenchRow(family, solver, kernels.BACKEND, n, rr, instances[0][1], reps, float(np.median(times)), "".join(v[0] for v in verdicts))
            )
            log.info("%s %s n=%d median %.4fs", family, solver, n, rows[-1].median_s)
    return rows


def exponents(rows: Sequence[BenchRow]) -> dict:
    out = {}
    for solver in sorted({row.solver for row in rows}):
        sel = [row for row in rows if row.solver == solver]
        if len(sel) >= 2:
            out[solver] = fit_exponent([row.n for row in sel], [row.median_s for row in sel])
    return out


# ---------------------------------------------------------------------------
# numba versus numpy kernels
# ---------------------------------------------------------------------------


def _kernel_inputs(n: int, rng: np.random.Generator):
    poly = random_affreg(n, rng)
    coef = np.array([float(c) for c in poly.generator.coefficients])
    # a nearby map of infinite order makes affine_order scan the full range
    theta = 2 * math.pi / (n + 0.5)
    rot = np.array([math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta), 0.0, 0.0])
    ref = np.sort(poly.chord_angles())
    return coef, rot, poly.vertices, ref


def compare_backends(sizes: Iterable[int], reps: int = 5, seed: int = 0) -> List[dict]:
    """Median time of each kernel under both implementations, with agreement checks."""
    rng = np.random.default_rng(seed)
    rows = []
    pairs = {
        "affine_order": (kernels.affine_order_numba, kernels.affine_order_numpy),
        "orbit": (kernels.orbit_numba, kernels.orbit_numpy),
        "chord_angles": (kernels.chord_angles_numba, kernels.chord_angles_numpy),
        "sorted_inclusion": (kernels.sorted_inclusion_numba, kernels.sorted_inclusion_numpy),
    }
    for n in sizes:
        coef, rot, verts, ref = _kernel_inputs(n, rng)
        args = {
            "affine_order": (rot, n, 1e-6),
            "orbit": (coef, float(verts[0, 0]), float(verts[0, 1]), n),
            "chord_angles": (np.ascontiguousarray(verts),),
            "sorted_inclusion": (ref, ref, 1e-9),
        }
        for name, (fast, slow) in pairs.items():
            a = args[name]
            fast(*a)  # compile outside the timed region
            tf = float(np.median([_median_time(lambda: fast(*a))[0] for _ in range(reps)]))
            ts = float(np.median([_median_time(lambda: slow(*a))[0] for _ in range(reps)]))
            agree = bool(np.allclose(np.asarray(fast(*a), dtype=float), np.asarray(slow(*a), dtype=float), atol=1e-9))
            rows.append({"kernel": name, "n": n, "numba_s": tf, "numpy_s": ts, "speedup": ts / tf if tf > 0 else math.inf, "agree": agree})
    return rows


def to_csv(rows: Sequence, fieldnames: Optional[Sequence[str]] = None) -> str:
    dicts = [asdict(r) if isinstance(r, BenchRow) else dict(r) for r in rows]
    if not dicts:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames or list(dicts[0]), lineterminator="\n")
    writer.writeheader()
    for d in dicts:
        writer.writerow({k: (f"{v:.6g}" if isinstance(v, float) else v) for k, v in d.items()})
    return buf.getvalue()
