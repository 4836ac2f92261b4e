"""Greedy B_h-sequences (generalized Sidon sequences)."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from .errors import PreconditionError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BhSequence:
    h: int
    terms: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


def _extend_sums(sums, c, h):
    """The ``j``-multiset sums of ``terms + [c]`` given those of ``terms`` (all ``j <= h``)."""
    new = [set(sums[0])]
    for j in range(1, h + 1):
        layer = set(sums[j])
        for r in range(1, j + 1):
            layer.update(r * c + s for s in sums[j - r])
        new.append(layer)
    return new


def _admissible(sums, c, h) -> bool:
    # new h-sums are those using c at least once; they must be pairwise distinct and fresh
    old = sums[h]
    seen = set()
    for r in range(1, h + 1):
        for s in sums[h - r]:
            t = r * c + s
            if t in old or t in seen:
                return False
            seen.add(t)
    return True


def greedy_bh(h: int, count: int) -> BhSequence:
    """First ``count`` terms of the greedy B_h-sequence starting at 1.

    Each step appends the smallest integer above the last term that keeps every
    sum of ``h`` terms (repetitions allowed) unique.  The sets of ``j``-sums for
    ``j <= h`` are maintained incrementally; the B_h property implies B_j for
    every ``j <= h``, so each set has exactly one entry per multiset.
    """
    if h < 2:
        raise PreconditionError("h must be at least 2")
    if count < 1:
        raise PreconditionError("count must be at least 1")
    terms = [1]
    sums = _extend_sums([{0}] + [set() for _ in range(h)], 1, h)
    while len(terms) < count:
        c = terms[-1] + 1
        while not _admissible(sums, c, h):
            c += 1
        terms.append(c)
        sums = _extend_sums(sums, c, h)
    n = len(terms)
    if n > 1:
        log.debug("greedy B_%d: c_%d = %d, ratio to n^(2h-1) = %.4g", h, n, terms[-1], terms[-1] / n ** (2 * h - 1))
    return BhSequence(h, tuple(terms))


def verify_bh(seq: Sequence[int], h: int) -> Union[bool, Tuple[tuple, tuple]]:
    """``True`` if all ``h``-multisets over ``seq`` have distinct sums, else a colliding pair."""
    seen = {}
    for combo in itertools.combinations_with_replacement(seq, h):
        s = sum(combo)
        if s in seen:
            return seen[s], combo
        seen[s] = combo
    return True
