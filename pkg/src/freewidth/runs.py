"""Run and gap statistics shared by both quasimorphisms.

A signature is a tuple of +1/-1 entries. A mark sequence is a tuple over
``Mark`` (PLUS, MINUS, OTHER). Both reduce to the same ``RunStats``: counts
``p[k]`` and ``m[k]`` from which ``d``, ``r`` and ``f`` are derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Sequence

Signature = tuple[int, ...]


class Mark(IntEnum):
    MINUS = -1
    OTHER = 0
    PLUS = 1


@dataclass(frozen=True)
class RunStats:
    p: dict[int, int] = field(default_factory=dict, hash=False)
    m: dict[int, int] = field(default_factory=dict, hash=False)

    @property
    def support(self) -> list[int]:
        return sorted(set(self.p) | set(self.m))

    @property
    def d(self) -> dict[int, int]:
        return {k: self.p.get(k, 0) - self.m.get(k, 0) for k in self.support}

    @property
    def r(self) -> dict[int, int]:
        # nonnegative remainder, so d = -1 gives 1
        return {k: v % 2 for k, v in self.d.items()}

    @property
    def f(self) -> int:
        return sum(self.r.values())

    def to_json(self) -> dict:
        return {
            "p": {str(k): v for k, v in sorted(self.p.items())},
            "m": {str(k): v for k, v in sorted(self.m.items())},
            "f": self.f,
        }


def _bump(counts: dict[int, int], k: int) -> None:
    counts[k] = counts.get(k, 0) + 1


def run_stats(sig: Sequence[int]) -> RunStats:
    """Count maximal runs of +1 and of -1 by length."""
    p: dict[int, int] = {}
    m: dict[int, int] = {}
    for value, run in itertools.groupby(sig):
        n = sum(1 for _ in run)
        if value == 1:
            _bump(p, n)
        elif value == -1:
            _bump(m, n)
        else:
            raise ValueError(f"signature entries must be +1 or -1, got {value}")
    return RunStats(p, m)


def gap_stats(marks: Sequence[int]) -> RunStats:
    """Count odd gaps between consecutive PLUS marks (and, separately, MINUS marks).

    A gap with ``2k-1`` tokens strictly between two consecutive occurrences
    adds to ``p[k]`` (resp. ``m[k]``). Even gaps are ignored. Interiors may
    contain marks of the opposite sign.
    """
    p: dict[int, int] = {}
    m: dict[int, int] = {}
    last = {Mark.PLUS: None, Mark.MINUS: None}
    for i, mk in enumerate(marks):
        if mk == Mark.OTHER:
            continue
        mk = Mark(mk)
        prev = last[mk]
        if prev is not None:
            interior = i - prev - 1
            if interior % 2 == 1:
                _bump(p if mk == Mark.PLUS else m, (interior + 1) // 2)
        last[mk] = i
    return RunStats(p, m)


def signature_inverse(sig: Sequence[int]) -> Signature:
    return tuple(-b for b in reversed(sig))


def s_product(sig1: Sequence[int], sig2: Sequence[int]) -> tuple[Signature, int]:
    """Cancel the longest suffix of ``sig1`` against the matching inverse prefix of ``sig2``.

    Returns the remaining concatenation and the cancelled length ``s``.
    """
    n1, n2 = len(sig1), len(sig2)
    s = 0
    while s < min(n1, n2) and sig1[n1 - 1 - s] == -sig2[s]:
        s += 1
    return tuple(sig1[: n1 - s]) + tuple(sig2[s:]), s
