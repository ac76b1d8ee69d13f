"""Words in an amalgamated free product ``G1 *_H G2`` of finite groups.

A word is a tuple of syllables ``(factor, element)`` with factor 1 or 2.
``H`` is given as a subgroup of each factor together with the identifying
isomorphism ``iso: H(G1) -> H(G2)``. Letters of the generating set
``G1 u G2`` are syllables; an element of ``H`` is always written as a
factor-1 letter so that equal generators compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    NoFillerElement,
    NoOppositeFactorElement,
    NotNormal,
    NotProper,
    UnknownLetter,
    WitnessNotApplicable,
    WordParseError,
)
from .groups import (
    CaseClassification,
    FiniteGroup,
    Subgroup,
    SubgroupIso,
    classify_amalgam_case,
    cosets,
    double_coset,
    normality_witness,
    quotient,
    trivial_subgroup,
)
from .runs import Mark, RunStats, gap_stats

Syllable = tuple[int, int]


@dataclass(frozen=True)
class AmalWord:
    syllables: tuple[Syllable, ...] = ()

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)


class Plain(NamedTuple):
    factor: int
    element: int


class AMark(NamedTuple):
    theta: int


@dataclass(frozen=True)
class SpecialForm:
    tokens: tuple[Plain | AMark, ...]

    def marks(self) -> tuple[Mark, ...]:
        return tuple(Mark(t.theta) if isinstance(t, AMark) else Mark.OTHER for t in self.tokens)


def _other(f: int) -> int:
    return 3 - f


class AmalInstance:
    """The amalgam ``G1 *_H G2`` with its case classification and witness ``a``."""

    kind = "amalgam"
    DEFECT = 9

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup, h1: Subgroup, h2: Subgroup, iso: SubgroupIso,
                 name: str = "", strict: bool = False):
        if not (h1.is_proper and h2.is_proper):
            raise NotProper("the amalgamated subgroup must be proper in both factors")
        self.groups = {1: g1, 2: g2}
        self.subgroups = {1: h1, 2: h2}
        self.iso = iso
        self._transport = {(1, 2): iso.mapping, (2, 1): iso.inverse().mapping}
        self.transversals = {1: cosets(g1, h1, "right"), 2: cosets(g2, h2, "right")}
        self.name = name
        self.classification: CaseClassification = classify_amalgam_case(g1, h1, g2, h2, strict=strict)
        self.witness = self.classification.witness
        self._presentations = self._build_presentations()
        self.identity = AmalWord()

    def __repr__(self) -> str:
        return f"<AmalInstance {self.name or (self.groups[1], self.groups[2])!r}>"

    @property
    def g1(self) -> FiniteGroup:
        return self.groups[1]

    @property
    def g2(self) -> FiniteGroup:
        return self.groups[2]

    def in_h(self, f: int, x: int) -> bool:
        return x in self.subgroups[f]

    def transport(self, h: int, src: int, dst: int) -> int:
        return h if src == dst else self._transport[(src, dst)][h]

    # letters --------------------------------------------------------------------

    def canonical_letter(self, letter: Syllable) -> Syllable:
        f, x = letter
        if self.in_h(f, x):
            return (1, self.transport(x, f, 1))
        return (f, x)

    def alphabet(self) -> list[Syllable]:
        return [(1, x) for x in self.g1.elements] + [(2, x) for x in self.g2.elements if not self.in_h(2, x)]

    def from_letters(self, letters: Iterable[Syllable]) -> AmalWord:
        sylls = []
        for letter in letters:
            f, x = letter
            if f not in (1, 2) or not 0 <= x < self.groups[f].order:
                raise UnknownLetter(f"{letter!r} is not a letter of this instance")
            sylls.append((int(f), int(x)))
        return self.reduce(AmalWord(tuple(sylls)))

    def to_letters(self, w: AmalWord) -> list[Syllable]:
        return [self.canonical_letter(s) for s in w]

    def parse_letters(self, text: str) -> list[Syllable]:
        out = []
        for pos, tok in enumerate(text.split()):
            head, sep, rest = tok.partition(":")
            if not sep or head not in ("1", "2"):
                raise WordParseError(f"bad token {tok!r} at position {pos}")
            f = int(head)
            try:
                out.append((f, self.groups[f].lookup(rest)))
            except KeyError:
                raise WordParseError(f"unknown element in token {tok!r} at position {pos}") from None
        return out

    def parse(self, text: str) -> AmalWord:
        return self.from_letters(self.parse_letters(text))

    def format_letters(self, letters: Sequence[Syllable]) -> str:
        return " ".join(f"{f}:{self.groups[f].label(x)}" for f, x in letters)

    def format(self, w: AmalWord) -> str:
        return self.format_letters(w.syllables) or "1"

    # reduction and normal form -----------------------------------------------------

    def reduce(self, w: AmalWord) -> AmalWord:
        """Merge same-factor neighbours and absorb H-syllables leftward (rightward at the front)."""
        stack: list[list[int]] = []
        pending = 0  # H element (factor-1 coordinates) waiting in front of the stack

        def absorb(h1: int) -> None:
            nonlocal pending
            while True:
                if not stack:
                    pending = self.g1.mul(pending, h1)
                    return
                f, x = stack[-1]
                y = self.groups[f].mul(x, self.transport(h1, 1, f))
                if not self.in_h(f, y):
                    stack[-1][1] = y
                    return
                stack.pop()
                h1 = self.transport(y, f, 1)

        for f, x in w.syllables:
            if self.in_h(f, x):
                absorb(self.transport(x, f, 1))
            elif stack and stack[-1][0] == f:
                y = self.groups[f].mul(stack[-1][1], x)
                if self.in_h(f, y):
                    stack.pop()
                    absorb(self.transport(y, f, 1))
                else:
                    stack[-1][1] = y
            else:
                stack.append([f, x])
        if stack:
            if pending:
                f, x = stack[0]
                stack[0][1] = self.groups[f].mul(self.transport(pending, 1, f), x)
            return AmalWord(tuple((f, x) for f, x in stack))
        return AmalWord(((1, pending),)) if pending else AmalWord()

    def is_reduced(self, w: AmalWord) -> bool:
        s = w.syllables
        if len(s) == 1:
            return s[0][1] != 0
        return (all(not self.in_h(f, x) for f, x in s)
                and all(s[i][0] != s[i + 1][0] for i in range(len(s) - 1)))

    def syllable_length(self, w: AmalWord) -> int:
        return len(self.reduce(w))

    def normal_form(self, w: AmalWord) -> AmalWord:
        """Reduced form ``x1 c2 ... cn`` with every ``ci`` (i > 1) a least right H-coset representative."""
        w = self.reduce(w)
        sylls = [list(s) for s in w.syllables]
        if len(sylls) == 1:
            f, x = sylls[0]
            return AmalWord((self.canonical_letter((f, x)),))
        for i in range(len(sylls) - 1, 0, -1):
            f, x = sylls[i]
            k, c = self.transversals[f].split(x)
            sylls[i][1] = c
            pf, px = sylls[i - 1]
            sylls[i - 1][1] = self.groups[pf].mul(px, self.transport(k, f, pf))
        return AmalWord(tuple((f, x) for f, x in sylls))

    def key(self, w: AmalWord) -> AmalWord:
        return self.normal_form(w)

    def equals(self, w1: AmalWord, w2: AmalWord) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def is_identity(self, w: AmalWord) -> bool:
        return not self.reduce(w).syllables

    # group operations ------------------------------------------------------------------

    def multiply(self, *ws: AmalWord) -> AmalWord:
        return self.reduce(AmalWord(tuple(s for w in ws for s in w.syllables)))

    def inverse(self, w: AmalWord) -> AmalWord:
        return AmalWord(tuple((f, self.groups[f].inverse(x)) for f, x in reversed(w.syllables)))

    def reverse(self, w: AmalWord) -> AmalWord:
        return AmalWord(self.reduce(w).syllables[::-1])

    def is_group_palindrome(self, w: AmalWord) -> bool:
        return self.equals(self.reverse(w), w)

    # special forms and the quasimorphism ---------------------------------------------------

    def _build_presentations(self) -> dict[int, tuple[int, int, int]]:
        c = self.classification
        if c.case == "Case2NonNormal":
            return dict(c.fpt.entries)
        if c.case != "Case1":
            return {}
        f, a = c.witness
        g, h = self.groups[f], self.subgroups[f]
        out = {}
        for theta, base in ((1, a), (-1, g.inverse(a))):
            for x in sorted(double_coset(g, h, base)):
                u, v = next((u, v) for u in h for v in h if g.prod(u, base, v) == x)
                out[x] = (u, theta, v)
        return out

    def _require_witness(self) -> tuple[int, int]:
        if self.witness is None:
            raise WitnessNotApplicable(
                f"{self.classification.case} has no witness element; use quotient_push")
        return self.witness

    def special_form(self, w: AmalWord) -> SpecialForm:
        """Replace each syllable ``u a^theta u'`` by a mark, pushing ``u`` left and ``u'`` right."""
        fa, _ = self._require_witness()
        sylls = [list(s) for s in self.reduce(w).syllables]
        n = len(sylls)
        marked: dict[int, int] = {}
        lead = trail = 0
        for i, (f, x) in enumerate(sylls):
            if f != fa or x not in self._presentations:
                continue
            u, theta, v = self._presentations[x]
            marked[i] = theta
            # neighbours lie in the other factor, so they are never marked themselves
            if i > 0:
                pf, px = sylls[i - 1]
                sylls[i - 1][1] = self.groups[pf].mul(px, self.transport(u, fa, pf))
            else:
                lead = u
            if i < n - 1:
                nf, nx = sylls[i + 1]
                sylls[i + 1][1] = self.groups[nf].mul(self.transport(v, fa, nf), nx)
            else:
                trail = v
        tokens: list[Plain | AMark] = []
        if lead:
            tokens.append(Plain(fa, lead))
        for i, (f, x) in enumerate(sylls):
            tokens.append(AMark(marked[i]) if i in marked else Plain(f, x))
        if trail:
            tokens.append(Plain(fa, trail))
        return SpecialForm(tuple(tokens))

    def evaluate(self, sf: SpecialForm) -> AmalWord:
        fa, a = self._require_witness()
        g = self.groups[fa]
        sylls = [(fa, g.power(a, t.theta)) if isinstance(t, AMark) else (t.factor, t.element) for t in sf.tokens]
        return self.reduce(AmalWord(tuple(sylls)))

    def mark_sequence(self, w: AmalWord) -> tuple[Mark, ...]:
        return self.special_form(self.normal_form(w)).marks()

    def run_stats(self, w: AmalWord) -> RunStats:
        return gap_stats(self.mark_sequence(w))

    def f(self, w: AmalWord) -> int:
        return self.run_stats(w).f

    def f_of_representative(self, w: AmalWord) -> int:
        """``f`` computed on the given reduced representative rather than the normal form."""
        return gap_stats(self.special_form(w).marks()).f

    @staticmethod
    def palindrome_bound(m: int) -> int:
        return 36 * m + 3

    @staticmethod
    def product_bound(k: int, m: int) -> int:
        # k factors each with f <= 36m + 3, plus defect 9 for each of the k - 1 products
        return (36 * m + 12) * k - 9

    @staticmethod
    def stated_product_bound(k: int, m: int) -> int:
        # alternative coefficient form, reported alongside for comparison; never used for bounds
        return 36 * k + 12 * m * k - 9

    @staticmethod
    def lower_bound_from_f(f: int, m: int) -> int:
        """Least ``k >= 1`` with ``f <= (36m + 12)k - 9``."""
        return max(1, math.ceil((f + 9) / (36 * m + 12)))

    def plength_lower_bound(self, w: AmalWord, m: int) -> int:
        """Least ``k`` with ``f(w) <= (36m + 12)k - 9``; 0 for the identity.

        Without a witness (H normal, Case 2) the bound is taken in the quotient.
        """
        if self.is_identity(w):
            return 0
        if self.witness is None:
            q, push = self.quotient_push()
            if q.witness is None:
                raise WitnessNotApplicable("quotient free product has no element of order >= 3")
            return max(1, q.plength_lower_bound(push(w), m))
        return self.lower_bound_from_f(self.f(w), m)

    # sampling -----------------------------------------------------------------------------

    def _outside(self, f: int) -> list[int]:
        return [x for x in self.groups[f].elements if not self.in_h(f, x)]

    def random_reduced_word(self, length: int, rng: np.random.Generator | int | None = None) -> AmalWord:
        rng = np.random.default_rng(rng)
        pools = {1: self._outside(1), 2: self._outside(2)}
        f = int(rng.integers(1, 3))
        sylls = []
        for _ in range(length):
            pool = pools[f]
            sylls.append((f, int(pool[rng.integers(len(pool))])))
            f = _other(f)
        return AmalWord(tuple(sylls))

    def shuffle(self, w: AmalWord, rng: np.random.Generator | int | None = None) -> AmalWord:
        """Insert ``h h^-1`` (random ``h`` in H) at every syllable boundary."""
        rng = np.random.default_rng(rng)
        sylls = [list(s) for s in w.syllables]
        h1 = self.subgroups[1]
        for i in range(len(sylls) - 1):
            h = h1.members[rng.integers(len(h1))]
            f, x = sylls[i]
            sylls[i][1] = self.groups[f].mul(x, self.transport(h, 1, f))
            nf, nx = sylls[i + 1]
            hi = self.g1.inverse(h)
            sylls[i + 1][1] = self.groups[nf].mul(self.transport(hi, 1, nf), nx)
        return AmalWord(tuple((f, x) for f, x in sylls))

    def witness_parts(self) -> tuple[int, int, int, int]:
        """Return ``(factor, a, c, b)``: filler ``c`` beside ``a`` and ``b`` from the other factor."""
        fa, a = self._require_witness()
        g, h = self.groups[fa], self.subgroups[fa]
        avoid = set(h) | double_coset(g, h, a) | double_coset(g, h, g.inverse(a))
        c = next((x for x in g.elements if x not in avoid), None)
        if c is None:
            raise NoFillerElement(f"every element of G{fa} lies in H, HaH or Ha^-1H")
        outside = self._outside(_other(fa))
        if not outside:
            raise NoOppositeFactorElement(f"G{_other(fa)} equals H")
        return fa, a, c, outside[0]

    def witness_word(self, K: int) -> AmalWord:
        """``a`` syllables whose i-th gap holds ``b (c b)^(i-1)``, i = 1..K, so ``f = K``."""
        if K < 1:
            raise ValueError("K must be at least 1")
        fa, a, c, b = self.witness_parts()
        fb = _other(fa)
        sylls = [(fa, a)]
        for i in range(1, K + 1):
            sylls.append((fb, b))
            for _ in range(i - 1):
                sylls += [(fa, c), (fb, b)]
            sylls.append((fa, a))
        return AmalWord(tuple(sylls))

    # quotient route --------------------------------------------------------------------------

    def quotient_push(self):
        """Free product of the factor quotients and the syllable-wise projection onto it."""
        for f in (1, 2):
            wit = normality_witness(self.groups[f], self.subgroups[f])
            if wit is not None:
                raise NotNormal(f"H is not normal in G{f}: conjugating {wit[1]} by {wit[0]}")
        q1, map1 = quotient(self.g1, self.subgroups[1])
        q2, map2 = quotient(self.g2, self.subgroups[2])
        t1, t2 = trivial_subgroup(q1), trivial_subgroup(q2)
        target = AmalInstance(q1, q2, t1, t2, SubgroupIso(t1, t2, {0: 0}),
                              name=f"{self.name}/H" if self.name else "")
        maps = {1: map1, 2: map2}

        def push(w: AmalWord) -> AmalWord:
            return target.reduce(AmalWord(tuple((f, int(maps[f][x])) for f, x in w.syllables)))

        return target, push

    def summary(self) -> dict:
        return {
            "construction": "amalgam",
            "name": self.name,
            "g1_order": self.g1.order,
            "g2_order": self.g2.order,
            "h_in_g1": list(self.subgroups[1].members),
            "h_in_g2": list(self.subgroups[2].members),
            "classification": self.classification.to_json(),
        }
