"""Case analysis of the factored quadruple identity over indeterminates ``X1..X12``.

With ``Zi = X(2i-1) + X(2i)`` the identity

    (Z3 - Z5)(Z6 - Z2)(Z4 - Z1) = (Z2 - Z4)(Z5 - Z1)(Z6 - Z3)

has linear, content-one factors, so each left factor equals a right factor up
to sign.  Every such matching gives three linear equations; solving them means
finding all merges of indeterminates that kill the equations while keeping
every required inequation nonzero.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

NVARS = 12


@dataclass(frozen=True)
class LinearForm:
    """Integer combination of ``X1..X12`` (index 0 holds ``X1``)."""

    coef: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coef) != NVARS:
            raise ValueError(f"a linear form has {NVARS} coefficients")

    @classmethod
    def var(cls, i: int) -> "LinearForm":
        """The indeterminate ``Xi`` (1-based)."""
        c = [0] * NVARS
        c[i - 1] = 1
        return cls(tuple(c))

    @classmethod
    def zero(cls) -> "LinearForm":
        return cls((0,) * NVARS)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a + b for a, b in zip(self.coef, other.coef)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(tuple(a - b for a, b in zip(self.coef, other.coef)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coef))

    def __rmul__(self, k: int) -> "LinearForm":
        return LinearForm(tuple(k * a for a in self.coef))

    def is_zero(self) -> bool:
        return not any(self.coef)

    def terms(self) -> Tuple[Tuple[int, int], ...]:
        """Nonzero ``(coefficient, variable)`` pairs, variables 1-based."""
        return tuple((c, i + 1) for i, c in enumerate(self.coef) if c)

    def substitute(self, old: int, new: int) -> "LinearForm":
        """Replace ``X_old`` by ``X_new``."""
        c = list(self.coef)
        c[new - 1] += c[old - 1]
        c[old - 1] = 0
        return LinearForm(tuple(c))

    def evaluate(self, values: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coef, values))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        out = ""
        for c, i in self.terms():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            out += f" {sign} {mag}X{i}" if out else f"{'-' if c < 0 else ''}{mag}X{i}"
        return out


X = [None] + [LinearForm.var(i) for i in range(1, NVARS + 1)]
Z = [None] + [X[2 * i - 1] + X[2 * i] for i in range(1, 7)]
FACTORS_LHS = (Z[3] - Z[5], Z[6] - Z[2], Z[4] - Z[1])
FACTORS_RHS = (Z[2] - Z[4], Z[5] - Z[1], Z[6] - Z[3])


def standard_inequations() -> List[LinearForm]:
    """``X(2i-1) != X(2i)`` and ``Zi != Zj`` for ``j < i`` with ``i + j != 7``."""
    out = []
    for i in range(1, 7):
        out.append(X[2 * i - 1] - X[2 * i])
        out.extend(Z[i] - Z[j] for j in range(1, i) if i + j != 7)
    return out


@dataclass(frozen=True)
class CaseDescriptor:
    signs: Tuple[int, int, int]
    permutation: Tuple[int, int, int]

    def equations(self) -> List[LinearForm]:
        return [FACTORS_LHS[i] - self.signs[i] * FACTORS_RHS[self.permutation[i]] for i in range(3)]

    @property
    def is_identity(self) -> bool:
        return self.signs == (1, 1, 1) and self.permutation == (0, 1, 2)


def enumerate_cases() -> List[Tuple[CaseDescriptor, List[LinearForm]]]:
    """The 24 sign/permutation matchings, in sign-major order."""
    out = []
    for signs in itertools.product((1, -1), repeat=3):
        if math.prod(signs) != 1:
            continue
        for perm in itertools.permutations(range(3)):
            case = CaseDescriptor(signs, perm)
            out.append((case, case.equations()))
    return out


Substitution = Tuple[Tuple[int, int], ...]
Partition = Tuple[Tuple[int, ...], ...]


def pivot_first(form: LinearForm) -> int:
    return next(i for c, i in form.terms() if c > 0)


def pivot_last(form: LinearForm) -> int:
    return [i for c, i in form.terms() if c > 0][-1]


def solve_case(
    equations: Sequence[LinearForm],
    inequations: Sequence[LinearForm],
    *,
    pivot=pivot_first,
) -> List[Substitution]:
    """All merge sequences reducing every equation to zero and no inequation to zero.

    The first equation's pivot variable (a positive-coefficient one) is merged
    into each negative-coefficient variable in turn; branches that zero an
    inequation are cut, zeroed equations are dropped.
    """
    results: List[Substitution] = []

    def rec(eqs: List[LinearForm], neqs: List[LinearForm], subs: Substitution):
        if not eqs:
            results.append(subs)
            return
        old = pivot(eqs[0])
        for c, new in eqs[0].terms():
            if c >= 0:
                continue
            new_neqs = [f.substitute(old, new) for f in neqs]
            if any(f.is_zero() for f in new_neqs):
                continue
            new_eqs = [f for f in (e.substitute(old, new) for e in eqs) if not f.is_zero()]
            rec(new_eqs, new_neqs, subs + ((old, new),))

    eqs = [e for e in equations if not e.is_zero()]
    rec(eqs, list(inequations), ())
    return results


def partition_of(subs: Iterable[Tuple[int, int]]) -> Partition:
    """Canonical partition of ``1..12``: classes sorted, ordered by smallest member."""
    parent = list(range(NVARS + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in subs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: Dict[int, List[int]] = {}
    for v in range(1, NVARS + 1):
        classes.setdefault(find(v), []).append(v)
    return tuple(sorted(tuple(c) for c in classes.values()))


def nontrivial_classes(p: Partition) -> Partition:
    return tuple(c for c in p if len(c) > 1)


def _reduce(form: LinearForm, p: Partition) -> LinearForm:
    for cls in p:
        for v in cls[1:]:
            form = form.substitute(v, cls[0])
    return form


def satisfies(p: Partition, equations: Sequence[LinearForm], inequations: Sequence[LinearForm]) -> bool:
    return all(_reduce(e, p).is_zero() for e in equations) and not any(
        _reduce(f, p).is_zero() for f in inequations
    )


def transposition_action(p: Partition, flips: int) -> Partition:
    """Apply ``X(2i-1) <-> X(2i)`` for every bit ``i-1`` set in ``flips``."""

    def img(v):
        i = (v + 1) // 2
        if flips >> (i - 1) & 1:
            return v + 1 if v % 2 else v - 1
        return v

    return tuple(sorted(tuple(sorted(img(v) for v in c)) for c in p))


def orbit_key(p: Partition) -> Partition:
    return min(transposition_action(p, f) for f in range(64))


# the two labelled patterns of the solvable case
PATTERN_I: Partition = tuple(sorted(((1, 3, 5), (2, 7, 9), (4, 8, 11), (6, 10, 12))))
PATTERN_II: Partition = tuple(sorted(((7, 9, 11), (3, 5, 12), (1, 6, 10), (2, 4, 8))))


def identity_holds(p: Partition) -> bool:
    """Expand both sides of the product identity over the class representatives."""
    lhs = _expand([_reduce(f, p) for f in FACTORS_LHS])
    rhs = _expand([_reduce(f, p) for f in FACTORS_RHS])
    return lhs == rhs


def _expand(factors: Sequence[LinearForm]) -> Dict[Tuple[int, ...], int]:
    poly: Dict[Tuple[int, ...], int] = {(): 1}
    for f in factors:
        nxt: Dict[Tuple[int, ...], int] = {}
        for mono, c in poly.items():
            for a, v in f.terms():
                key = tuple(sorted(mono + (v,)))
                nxt[key] = nxt.get(key, 0) + c * a
        poly = {m: c for m, c in nxt.items() if c}
    return poly


@dataclass
class CaseResult:
    case: CaseDescriptor
    equations: List[LinearForm]
    substitutions: List[Substitution]

    @property
    def partitions(self) -> List[Partition]:
        return [partition_of(s) for s in self.substitutions]


@dataclass
class AnalysisReport:
    cases: List[CaseResult]
    solvable_case_count: int
    per_case_solution_counts: List[int]
    total_solutions: int
    distinct_partitions: int
    orbit_count_mod_transpositions: int
    representative_orbits: List[Partition]
    orbit_labels: List[Optional[str]]

    def to_json(self) -> dict:
        return {
            "solvable_case_count": self.solvable_case_count,
            "per_case_solution_counts": self.per_case_solution_counts,
            "total_solutions": self.total_solutions,
            "distinct_partitions": self.distinct_partitions,
            "orbit_count_mod_transpositions": self.orbit_count_mod_transpositions,
            "representative_orbits": [
                {"label": lab, "classes": [list(c) for c in nontrivial_classes(rep)]}
                for rep, lab in zip(self.representative_orbits, self.orbit_labels)
            ],
            "solvable_cases": [
                {"signs": list(r.case.signs), "permutation": list(r.case.permutation)}
                for r in self.cases
                if r.substitutions
            ],
        }


def run_full_analysis(pivot=pivot_first) -> AnalysisReport:
    neqs = standard_inequations()
    results = [CaseResult(case, eqs, solve_case(eqs, neqs, pivot=pivot)) for case, eqs in enumerate_cases()]
    counts = [len(r.substitutions) for r in results]
    parts = {p for r in results for p in r.partitions}
    orbits: Dict[Partition, Partition] = {}
    for p in sorted(parts):
        orbits.setdefault(orbit_key(p), p)
    labels = {orbit_key(PATTERN_I): "i", orbit_key(PATTERN_II): "ii"}
    keys = sorted(orbits)
    return AnalysisReport(
        cases=results,
        solvable_case_count=sum(1 for c in counts if c),
        per_case_solution_counts=counts,
        total_solutions=sum(counts),
        distinct_partitions=len(parts),
        orbit_count_mod_transpositions=len(orbits),
        representative_orbits=[orbits[k] for k in keys],
        orbit_labels=[labels.get(k) for k in keys],
    )


def _sign(v: int) -> str:
    return "+1" if v > 0 else "-1"


def narrate(report: AnalysisReport, max_examples: int = 10) -> str:
    """Per-case text transcript of the analysis."""
    lines = []
    total = len(report.cases)
    for n, r in enumerate(report.cases, 1):
        lines.append(f"Case {n} out of {total}.")
        lines.append("-> The signs are " + ", ".join(_sign(s) for s in r.case.signs))
        lines.append(f"-> Permutation {r.case.permutation}")
        lines.append("The system of equations is:")
        lines.extend(f"{e} = 0" for e in r.equations)
        lines.append(f"...there are {len(r.substitutions)} solutions.")
        shown = r.partitions[:max_examples]
        if shown:
            lines.append("")
            lines.append(f"For example, here are {len(shown)} solutions:")
            for p in shown:
                lines.append("")
                lines.extend(" = ".join(f"X{v}" for v in c) for c in nontrivial_classes(p))
            lines.append("")
            lines.append(f"There are {len(r.substitutions) - len(shown)} more solutions.")
        lines.append("")
    lines.append(f"solvable cases: {report.solvable_case_count}")
    lines.append(f"total solutions: {report.total_solutions}")
    lines.append(f"orbits under the 2^6 transpositions: {report.orbit_count_mod_transpositions}")
    return "\n".join(lines) + "\n"
