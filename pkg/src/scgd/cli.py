"""Command-line front end.

Exit status: 0 for success or YES, 1 for NO or a failed check, 2 for errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

import numpy as np

from . import jsonio
from .affreg import (
    AffRegPolygon,
    affine_image,
    expected_boundary_indices,
    four_slopes_query,
    profile_is_consistent,
    random_affine,
    regular_ngon,
    slope_profile,
)
from .errors import ScgdError
from .generic import build_generic, check_slope_generic
from .geometry import EPS, AffineMap, dual
from .reduction import encode_clique, verify_witness
from .sidon import greedy_bh
from .solver import SolverAnswer, SolverConfig, brute_force_scgd, solve_monte_carlo, solve_restricted, solve_small

log = logging.getLogger("scgd")


def _emit(obj) -> None:
    sys.stdout.write(jsonio.dumps(obj) + "\n")


def polygon_to_json(p: AffRegPolygon) -> dict:
    doc = {
        "vertices": [[float(x), float(y)] for x, y in p.vertices],
        "order": p.order,
        "generator": [float(c) for c in p.generator.coefficients],
    }
    if p.variant is not None:
        doc["variant"] = p.variant
    return doc


def answer_to_json(ans: SolverAnswer) -> dict:
    cert = ans.certificate
    if isinstance(cert, AffRegPolygon):
        cert_doc = polygon_to_json(cert)
    elif cert is not None:
        cert_doc = {"points": jsonio.format_points(cert)}
    else:
        cert_doc = None
    doc = {
        "verdict": ans.verdict,
        "certificate": cert_doc,
        "no_is_conditional": ans.no_is_conditional,
        "succeeding_window": list(ans.succeeding_window) if ans.succeeding_window is not None else None,
        "mode": ans.mode,
    }
    if ans.witness is not None:
        doc["witness"] = jsonio.witness_to_json(ans.witness)
    return doc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_sidon(a) -> int:
    seq = greedy_bh(a.h, a.count)
    _emit({"h": seq.h, "terms": list(seq.terms)})
    return 0


def cmd_generic(a) -> int:
    g = build_generic(a.count, a.base)
    _emit({"base": g.base, "exponents": list(g.exponents.terms), "points": jsonio.format_points(g.points)})
    return 0


def cmd_check_generic(a) -> int:
    pts = jsonio.points_from_json(jsonio.load_json(a.points))
    res = check_slope_generic(pts)
    ce = res.counterexample
    _emit(
        {
            "generic": res.generic,
            "counterexample": jsonio.format_points(ce) if ce is not None else None,
            "assignments_checked": res.assignments_checked,
        }
    )
    return 0 if res.generic else 1


def cmd_reduce(a) -> int:
    g = jsonio.graph_from_json(jsonio.load_json(a.graph))
    inst, lab = encode_clique(g, a.k or 0, half_clique=a.half_clique, base=a.base)
    _emit(
        {
            "instance": jsonio.instance_to_json(inst.slopes, inst.k),
            "labeling": {
                "base": lab.generic.base,
                "exponents": list(lab.generic.exponents.terms),
                "points": jsonio.format_points(lab.generic.points),
            },
        }
    )
    return 0


def cmd_check_witness(a) -> int:
    s, k = jsonio.instance_from_json(jsonio.load_json(a.instance), a.eps)
    w = jsonio.witness_from_json(jsonio.load_json(a.witness))
    from .reduction import ScgdInstance

    ok = verify_witness(ScgdInstance(s, k), w)
    _emit({"valid": ok})
    return 0 if ok else 1


def _config(a) -> SolverConfig:
    return SolverConfig(
        c1=getattr(a, "c1", 4),
        epsilon=a.eps,
        mc_reps=getattr(a, "reps", 12),
        rng_seed=getattr(a, "seed", 0),
    )


def cmd_solve(a) -> int:
    s, k = jsonio.instance_from_json(jsonio.load_json(a.instance), a.eps)
    ans = solve_small(s, k) if k <= 4 else solve_restricted(s, k, _config(a))
    _emit(answer_to_json(ans))
    return 0 if ans else 1


def cmd_solve_mc(a) -> int:
    s, k = jsonio.instance_from_json(jsonio.load_json(a.instance), a.eps)
    cfg = _config(a)
    ans = solve_small(s, k) if k <= 4 else solve_monte_carlo(s, k, cfg, np.random.default_rng(cfg.rng_seed))
    _emit(answer_to_json(ans))
    return 0 if ans else 1


def cmd_oracle(a) -> int:
    s, k = jsonio.instance_from_json(jsonio.load_json(a.instance), a.eps)
    w = brute_force_scgd(s, k, a.budget)
    _emit({"witness": jsonio.witness_to_json(w) if w is not None else None})
    return 0 if w is not None else 1


def cmd_dual(a) -> int:
    pts = jsonio.points_from_json(jsonio.load_json(a.points))
    _emit({"points": jsonio.format_points(dual(pts))})
    return 0


def cmd_affreg(a) -> int:
    if a.affine is not None:
        psi = AffineMap(*a.affine)
        poly = affine_image(regular_ngon(a.n), psi)
    elif a.seed is not None:
        poly = affine_image(regular_ngon(a.n), random_affine(np.random.default_rng(a.seed)))
    else:
        poly = regular_ngon(a.n)
    prof = slope_profile(poly)
    doc = polygon_to_json(poly)
    doc.update(
        {
            "slopes": jsonio.format_slopes(poly.slope_set(a.eps)),
            "k": poly.order,
            "profile": {
                "chords": jsonio.format_slopes(prof.slopes),
                "boundary": jsonio.format_slopes(prof.boundary),
                "boundary_indices": expected_boundary_indices(poly.order),
                "consistent": profile_is_consistent(prof),
            },
        }
    )
    _emit(doc)
    return 0


def cmd_four_slopes(a) -> int:
    s, k = jsonio.instance_from_json(jsonio.load_json(a.instance), a.eps)
    items = [t.strip() for t in a.t.split(",")]
    if len(items) != 4:
        raise ScgdError("--t needs four comma-separated slopes")
    raw = [json.loads(t) if t.lower() != "inf" else "inf" for t in items] if not s.exact else items
    mode = "exact" if s.exact else "float"
    t = [jsonio.parse_slope(v, mode) for v in raw]
    poly = four_slopes_query(s, k, t, a.eps)
    _emit(polygon_to_json(poly) if poly is not None else "none")
    return 0 if poly is not None else 1


def cmd_cases(a) -> int:
    from .symbolic import narrate, run_full_analysis

    report = run_full_analysis()
    if a.text:
        sys.stdout.write(narrate(report))
    else:
        _emit(report.to_json())
    return 0


def cmd_render(a) -> int:
    from .svg import write_svg

    pts = jsonio.points_from_json(jsonio.load_json(a.points))
    write_svg(pts, a.out)
    return 0


def _sizes(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_bench(a) -> int:
    from . import bench

    if a.compare_backends:
        text = bench.to_csv(bench.compare_backends(_sizes(a.sizes), a.reps, a.seed))
    else:
        rows = bench.run_bench(a.family, _sizes(a.sizes), a.reps, a.seed, a.r, eps=a.eps)
        text = bench.to_csv(rows)
        for solver, e in bench.exponents(rows).items():
            log.info("fitted exponent %s: %.3f", solver, e)
            sys.stderr.write(f"# fitted exponent {solver}: {e:.3f}\n")
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scgd", description="Slope-constrained drawings: generic sets, reductions and solvers.")
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--eps", type=float, default=EPS, help="angular tolerance for float slopes")
        return sp

    sp = add("sidon", cmd_sidon, "greedy B_h-sequence")
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)

    sp = add("generic", cmd_generic, "slope-generic point set on the parabola")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--base", type=int, default=50)

    sp = add("check-generic", cmd_check_generic, "exhaustive slope-genericity check")
    sp.add_argument("--points", required=True)

    sp = add("reduce", cmd_reduce, "encode a CLIQUE instance as an SCGD instance")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--half-clique", action="store_true")
    sp.add_argument("--base", type=int, default=50)

    sp = add("check-witness", cmd_check_witness, "verify an SCGD witness")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--witness", required=True)

    sp = add("solve", cmd_solve, "deterministic restricted solver")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--c1", type=int, default=4)

    sp = add("solve-mc", cmd_solve_mc, "Monte-Carlo solver")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--c1", type=int, default=4)
    sp.add_argument("--reps", type=int, default=12)
    sp.add_argument("--seed", type=int, required=True)

    sp = add("oracle", cmd_oracle, "brute-force witness search")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--budget", type=int, default=10**7)

    sp = add("dual", cmd_dual, "dual of a quadruple")
    sp.add_argument("--points", required=True)

    sp = add("affreg", cmd_affreg, "affinely-regular polygon and its slope profile")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--affine", type=float, nargs=6, metavar=("A", "B", "C", "D", "E", "F"))
    sp.add_argument("--seed", type=int, help="use a random affine image")

    sp = add("four-slopes", cmd_four_slopes, "polygon with four given consecutive slopes")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--t", required=True, help="s0,s1,s2,s3")

    sp = add("cases", cmd_cases, "case analysis of the quadruple identity")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", default=True)
    g.add_argument("--text", action="store_true")

    sp = add("render", cmd_render, "SVG drawing of a point set")
    sp.add_argument("--points", required=True)
    sp.add_argument("--out", required=True)

    sp = add("bench", cmd_bench, "timing benchmark (CSV)")
    sp.add_argument("--family", default="polygon-plus-noise", choices=("polygon-exact", "polygon-plus-noise", "reduction"))
    sp.add_argument("--sizes", default="256,512,1024,2048,4096,8192,16384")
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--r", type=int, default=4, help="extra slopes for polygon-plus-noise")
    sp.add_argument("--out")
    sp.add_argument("--compare-backends", action="store_true", help="time numba against numpy kernels")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ScgdError, OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
