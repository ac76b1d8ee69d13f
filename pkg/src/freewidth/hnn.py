"""Words in the HNN extension ``G* = <G, t | t^-1 h t = phi(h), h in H1>`` of a finite group.

An element is stored as an ``HnnWord``: a base element ``g0`` followed by
pairs ``(beta, g)`` standing for ``t^beta g``. Letters (the generating set
``G u {t, t^-1}``) are tuples ``("t", +1)``, ``("t", -1)`` and ``("g", k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceTooSmall, NoSeparatorElement, NotProper, UnknownLetter, WordParseError
from .groups import FiniteGroup, Subgroup, SubgroupIso, cosets
from .runs import RunStats, Signature, run_stats

T = ("t", 1)
T_INV = ("t", -1)


def base(k: int) -> tuple[str, int]:
    return ("g", k)


@dataclass(frozen=True)
class HnnWord:
    g0: int = 0
    tail: tuple[tuple[int, int], ...] = ()

    @property
    def r(self) -> int:
        return len(self.tail)

    @property
    def betas(self) -> Signature:
        return tuple(b for b, _ in self.tail)

    @property
    def gs(self) -> tuple[int, ...]:
        return (self.g0,) + tuple(g for _, g in self.tail)

    @classmethod
    def build(cls, gs: Sequence[int], betas: Sequence[int]) -> "HnnWord":
        assert len(gs) == len(betas) + 1
        return cls(int(gs[0]), tuple((int(b), int(g)) for b, g in zip(betas, gs[1:])))


class HnnInstance:
    """An HNN extension of a finite base group along ``phi: H1 -> H2``."""

    kind = "hnn"
    DEFECT = 6

    def __init__(self, base_group: FiniteGroup, h1: Subgroup, h2: Subgroup, phi: SubgroupIso, name: str = ""):
        if not (h1.is_proper and h2.is_proper):
            raise NotProper("H1 and H2 must be proper subgroups of the base group")
        self.base = base_group
        self.h1 = h1
        self.h2 = h2
        self.phi = phi
        self.phi_inv = phi.inverse()
        self.t1 = cosets(base_group, h1, "right")
        self.t2 = cosets(base_group, h2, "right")
        self.name = name
        self.identity = HnnWord()

    def __repr__(self) -> str:
        return f"<HnnInstance {self.name or self.base!r}>"

    # letters ----------------------------------------------------------------

    def alphabet(self) -> list[tuple[str, int]]:
        return [base(k) for k in self.base.elements] + [T, T_INV]

    def to_alternating(self, letters: Iterable) -> HnnWord:
        gs = [0]
        betas: list[int] = []
        for letter in letters:
            kind, val = letter
            if kind == "t" and val in (1, -1):
                betas.append(val)
                gs.append(0)
            elif kind == "g" and 0 <= val < self.base.order:
                gs[-1] = self.base.mul(gs[-1], val)
            else:
                raise UnknownLetter(f"{letter!r} is not a letter of this instance")
        return HnnWord.build(gs, betas)

    from_letters = to_alternating

    def to_letters(self, w: HnnWord) -> list[tuple[str, int]]:
        out = []
        if w.g0:
            out.append(base(w.g0))
        for b, g in w.tail:
            out.append(T if b == 1 else T_INV)
            if g:
                out.append(base(g))
        return out

    def parse_letters(self, text: str) -> list[tuple[str, int]]:
        letters = []
        for pos, tok in enumerate(text.split()):
            if tok == "t":
                letters.append(T)
            elif tok == "t^-1":
                letters.append(T_INV)
            elif tok.startswith("g:"):
                try:
                    letters.append(base(self.base.lookup(tok[2:])))
                except KeyError:
                    raise WordParseError(f"unknown base element in token {tok!r} at position {pos}") from None
            else:
                raise WordParseError(f"bad token {tok!r} at position {pos}")
        return letters

    def parse(self, text: str) -> HnnWord:
        return self.to_alternating(self.parse_letters(text))

    def format_letters(self, letters: Sequence) -> str:
        return " ".join(("t" if v == 1 else "t^-1") if k == "t" else f"g:{self.base.label(v)}"
                        for k, v in letters)

    def format(self, w: HnnWord) -> str:
        return self.format_letters(self.to_letters(w)) or "1"

    # reduction and normal form ---------------------------------------------------

    def _pinch(self, left_beta: int, g: int, right_beta: int) -> int | None:
        """Image of ``t^left g t^right`` in the base group if it is a pinch."""
        if left_beta == -1 and right_beta == 1 and g in self.h1:
            return self.phi(g)
        if left_beta == 1 and right_beta == -1 and g in self.h2:
            return self.phi_inv(g)
        return None

    def is_reduced(self, w: HnnWord) -> bool:
        gs, bs = w.gs, w.betas
        return all(self._pinch(bs[i - 1], gs[i], bs[i]) is None for i in range(1, len(bs)))

    def britton_reduce(self, w: HnnWord) -> HnnWord:
        mul = self.base.mul
        gs = [w.g0]
        bs: list[int] = []
        for beta, g in w.tail:
            image = self._pinch(bs[-1], gs[-1], beta) if bs else None
            if image is None:
                bs.append(beta)
                gs.append(g)
            else:
                bs.pop()
                gs.pop()
                gs[-1] = mul(mul(gs[-1], image), g)
        return HnnWord.build(gs, bs)

    reduce = britton_reduce

    def normal_form(self, w: HnnWord) -> HnnWord:
        """Reduced form whose syllables after each ``t^beta`` are least coset representatives.

        After ``t`` the syllable is a right H2-coset representative, after
        ``t^-1`` a right H1-coset representative.
        """
        w = self.britton_reduce(w)
        gs = list(w.gs)
        bs = w.betas
        mul = self.base.mul
        for i in range(len(bs), 0, -1):
            if bs[i - 1] == 1:
                k, gs[i] = self.t2.split(gs[i])
                moved = self.phi_inv(k)  # t k = phi^-1(k) t
            else:
                k, gs[i] = self.t1.split(gs[i])
                moved = self.phi(k)  # t^-1 k = phi(k) t^-1
            gs[i - 1] = mul(gs[i - 1], moved)
        return HnnWord.build(gs, bs)

    def key(self, w: HnnWord) -> HnnWord:
        return self.normal_form(w)

    def equals(self, w1: HnnWord, w2: HnnWord) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def is_identity(self, w: HnnWord) -> bool:
        return self.normal_form(w) == self.identity

    # group operations -----------------------------------------------------------

    def multiply(self, *ws: HnnWord) -> HnnWord:
        gs = [0]
        bs: list[int] = []
        for w in ws:
            gs[-1] = self.base.mul(gs[-1], w.g0)
            for b, g in w.tail:
                bs.append(b)
                gs.append(g)
        return self.britton_reduce(HnnWord.build(gs, bs))

    def inverse(self, w: HnnWord) -> HnnWord:
        inv = self.base.inverse
        gs = [inv(g) for g in reversed(w.gs)]
        bs = [-b for b in reversed(w.betas)]
        return HnnWord.build(gs, bs)

    def reverse(self, w: HnnWord) -> HnnWord:
        """Syllable reversal ``g_r t^b_r ... t^b_1 g_0`` of the reduced form (exponents kept)."""
        w = self.britton_reduce(w)
        return HnnWord.build(w.gs[::-1], w.betas[::-1])

    def is_group_palindrome(self, w: HnnWord) -> bool:
        return self.equals(self.reverse(w), w)

    # quasimorphism ----------------------------------------------------------------

    def signature(self, w: HnnWord) -> Signature:
        return self.britton_reduce(w).betas

    def run_stats(self, w: HnnWord) -> RunStats:
        return run_stats(self.signature(w))

    def f(self, w: HnnWord) -> int:
        return self.run_stats(w).f

    @staticmethod
    def palindrome_bound(m: int) -> int:
        return 24 * m + 1

    @staticmethod
    def product_bound(k: int, m: int) -> int:
        return 7 * k + 24 * m * k - 6

    @staticmethod
    def lower_bound_from_f(f: int, m: int) -> int:
        """Least ``k >= 1`` with ``f <= 7k + 24mk - 6``."""
        return max(1, math.ceil((f + 6) / (24 * m + 7)))

    def plength_lower_bound(self, w: HnnWord, m: int) -> int:
        """Least ``k`` compatible with ``f(w) <= 7k + 24mk - 6``; 0 for the identity."""
        if self.is_identity(w):
            return 0
        return self.lower_bound_from_f(self.f(w), m)

    # sampling ----------------------------------------------------------------------

    def random_reduced_word(self, length: int, rng: np.random.Generator | int | None = None) -> HnnWord:
        rng = np.random.default_rng(rng)
        n = self.base.order
        outside = {1: [g for g in self.base.elements if g not in self.h1],
                   -1: [g for g in self.base.elements if g not in self.h2]}
        if not outside[1] or not outside[-1]:
            raise InstanceTooSmall("no element outside H1 or H2")
        bs = [int(b) for b in rng.choice((1, -1), size=length)]
        gs = [int(rng.integers(n))]
        for i in range(length):
            nxt = bs[i + 1] if i + 1 < length else None
            if nxt is not None and nxt == -bs[i]:
                # t^-1 g t needs g outside H1; t g t^-1 needs g outside H2
                pool = outside[1] if bs[i] == -1 else outside[-1]
                gs.append(int(pool[rng.integers(len(pool))]))
            else:
                gs.append(int(rng.integers(n)))
        return HnnWord.build(gs, bs)

    def shuffle(self, w: HnnWord, rng: np.random.Generator | int | None = None) -> HnnWord:
        """Another reduced representative: slide a random subgroup element through every ``t``.

        Uses ``h t phi(h)^-1 = t`` (h in H1) and ``k t^-1 phi^-1(k)^-1 = t^-1`` (k in H2).
        """
        rng = np.random.default_rng(rng)
        mul, inv = self.base.mul, self.base.inverse
        gs = list(w.gs)
        for i, b in enumerate(w.betas):
            if b == 1:
                h = self.h1.members[rng.integers(len(self.h1))]
                after = inv(self.phi(h))
            else:
                h = self.h2.members[rng.integers(len(self.h2))]
                after = inv(self.phi_inv(h))
            gs[i] = mul(gs[i], h)
            gs[i + 1] = mul(after, gs[i + 1])
        return HnnWord.build(gs, w.betas)

    def separator(self) -> int:
        for g in self.base.elements:
            if g not in self.h1 and g not in self.h2:
                return g
        raise NoSeparatorElement("H1 and H2 cover the base group")

    def witness_word(self, K: int) -> HnnWord:
        """Maximal +1 runs of lengths 1..K separated by single -1 entries.

        Every interior base letter lies outside H1 u H2, so the word is reduced
        and ``f = (K - 1) + (K mod 2)``.
        """
        if K < 1:
            raise ValueError("K must be at least 1")
        sep = self.separator()
        bs: list[int] = []
        for k in range(1, K + 1):
            bs.extend([1] * k)
            if k < K:
                bs.append(-1)
        gs = [0] + [sep] * (len(bs) - 1) + [0]
        return HnnWord.build(gs, bs)

    def summary(self) -> dict:
        return {
            "construction": "hnn",
            "name": self.name,
            "base_order": self.base.order,
            "h1": list(self.h1.members),
            "h2": list(self.h2.members),
            "index_h1": self.h1.index,
            "index_h2": self.h2.index,
        }
