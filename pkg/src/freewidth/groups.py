"""Finite groups given by Cayley tables, plus subgroup, coset and double coset helpers.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    MissingIdentity,
    NoCase2Witness,
    NotAGroup,
    NotBijective,
    NotClosed,
    NotHomomorphism,
    NotNormal,
    OrderCapExceeded,
    OrderTwoInDoubleCoset,
)

ORDER_CAP = 512


class FiniteGroup:
    """A finite group stored as a validated multiplication table.

    Construction checks the identity row/column, inverses, the Latin square
    property and associativity (exhaustively, so ``order`` is capped at 512).
    """

    def __init__(self, mult, names: Sequence[str] | None = None, name: str = ""):
        table = np.asarray(mult)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise NotAGroup(f"multiplication table must be a non-empty square, got shape {table.shape}")
        n = table.shape[0]
        if n > ORDER_CAP:
            raise OrderCapExceeded(f"order {n} exceeds the exhaustive-check cap {ORDER_CAP}")
        if not np.issubdtype(table.dtype, np.integer):
            raise NotAGroup("multiplication table entries must be integers")
        table = table.astype(np.int64)
        if table.min() < 0 or table.max() >= n:
            raise NotAGroup(f"table entries must lie in 0..{n - 1}")
        if names is not None and len(names) != n:
            raise NotAGroup(f"expected {n} names, got {len(names)}")

        self.order = n
        self.name = name
        self.names = list(names) if names is not None else None
        self.mult = table
        self.mult.setflags(write=False)
        self.inv = self._validate()
        self.inv.setflags(write=False)
        self._name_index = {s: i for i, s in enumerate(self.names)} if self.names else {}

    def _validate(self) -> np.ndarray:
        t = self.mult
        n = self.order
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise NotAGroup("element 0 is not a two-sided identity")
        inv = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            hits = np.flatnonzero(t[g] == 0)
            if len(hits) != 1 or t[hits[0], g] != 0:
                raise NotAGroup(f"no inverse for {g}")
            inv[g] = hits[0]
        for g in range(n):
            if len(set(t[g].tolist())) != n:
                raise NotAGroup(f"row {g} is not a permutation")
            if len(set(t[:, g].tolist())) != n:
                raise NotAGroup(f"column {g} is not a permutation")
        for a in range(n):
            left = t[t[a]]  # (ab)c indexed [b, c]
            right = t[a][t]  # a(bc) indexed [b, c]
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = (int(x) for x in bad[0])
                raise NotAGroup(f"associativity fails for ({a}, {b}, {c})")
        return inv

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.mult, other.mult)

    def __hash__(self) -> int:
        return hash(self.mult.tobytes())

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def prod(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.mult[out, x])
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse(a), -k
        out = 0
        for _ in range(k):
            out = int(self.mult[out, a])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.mult[x, a])
            k += 1
        return k

    def label(self, a: int) -> str:
        return self.names[a] if self.names else str(a)

    def lookup(self, token: str) -> int:
        """Resolve an element from its display name or decimal index."""
        if token in self._name_index:
            return self._name_index[token]
        try:
            k = int(token)
        except ValueError:
            raise KeyError(token) from None
        if not 0 <= k < self.order:
            raise KeyError(token)
        return k

    def to_json(self) -> dict:
        out = {"name": self.name, "order": self.order, "mult": self.mult.tolist()}
        if self.names:
            out["names"] = list(self.names)
        return out


def load_group(desc: Mapping) -> FiniteGroup:
    """Build a group from its JSON description ``{"name", "order", "mult", "names"?}``."""
    try:
        mult = desc["mult"]
    except (KeyError, TypeError):
        raise NotAGroup("group description needs a 'mult' table") from None
    order = desc.get("order", len(mult))
    if order > ORDER_CAP:
        raise OrderCapExceeded(f"order {order} exceeds the exhaustive-check cap {ORDER_CAP}")
    if len(mult) != order:
        raise NotAGroup(f"declared order {order} but table has {len(mult)} rows")
    return FiniteGroup(mult, names=desc.get("names"), name=desc.get("name", ""))


# Standard constructions -------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def from_permutations(perms: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Group of the given permutations (listed in element order, identity first).

    Composition is ``(p*q)(i) = p[q[i]]``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    if perms[0] != tuple(range(len(perms[0]))):
        raise NotAGroup("first permutation must be the identity")
    mult = []
    for p in perms:
        row = []
        for q in perms:
            r = tuple(p[i] for i in q)
            if r not in index:
                raise NotAGroup(f"permutation set not closed: {p} * {q}")
            row.append(index[r])
        mult.append(row)
    return FiniteGroup(mult, name=name)


def symmetric(n: int) -> FiniteGroup:
    return from_permutations(list(itertools.permutations(range(n))), name=f"S{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ``(x, y)`` are encoded as ``x * |h| + y``."""
    m = h.order
    n = g.order * m
    mult = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        xa, ya = divmod(a, m)
        mult[a] = g.mult[xa][np.arange(n) // m] * m + h.mult[ya][np.arange(n) % m]
    return FiniteGroup(mult, name=f"{g.name}x{h.name}")


# Subgroups -----------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: tuple[int, ...]
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.members))

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.members)

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.parent.order

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1


def subgroup_check(group: FiniteGroup, members: Iterable[int]) -> Subgroup:
    ms = sorted(set(int(x) for x in members))
    if any(not 0 <= x < group.order for x in ms):
        raise NotClosed(f"members must lie in 0..{group.order - 1}")
    if 0 not in ms:
        raise MissingIdentity("subgroup must contain the identity 0")
    s = set(ms)
    for x in ms:
        if group.inverse(x) not in s:
            raise NotClosed(f"inverse of {x} is missing")
        for y in ms:
            if group.mul(x, y) not in s:
                raise NotClosed(f"{x} * {y} = {group.mul(x, y)} is not a member")
    return Subgroup(group, tuple(ms))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


@dataclass(frozen=True)
class SubgroupIso:
    domain: Subgroup
    codomain: Subgroup
    mapping: Mapping[int, int] = field(hash=False)

    def __call__(self, h: int) -> int:
        return self.mapping[h]

    def inverse(self) -> "SubgroupIso":
        return SubgroupIso(self.codomain, self.domain, {v: k for k, v in self.mapping.items()})


def iso_check(phi, h1: Subgroup, h2: Subgroup) -> SubgroupIso:
    """Validate ``phi`` (a mapping or a list of ``[from, to]`` pairs) as an isomorphism ``h1 -> h2``."""
    mapping = dict(phi.items()) if isinstance(phi, Mapping) else {int(a): int(b) for a, b in phi}
    if set(mapping) != set(h1.members):
        raise NotBijective("map must be defined exactly on the domain subgroup")
    if sorted(mapping.values()) != list(h2.members):
        raise NotBijective("map is not a bijection onto the codomain subgroup")
    if mapping[0] != 0:
        raise NotHomomorphism(f"identity maps to {mapping[0]}")
    g1, g2 = h1.parent, h2.parent
    for x in h1:
        for y in h1:
            if mapping[g1.mul(x, y)] != g2.mul(mapping[x], mapping[y]):
                raise NotHomomorphism(f"phi({x}*{y}) != phi({x})*phi({y})")
    return SubgroupIso(h1, h2, mapping)


@dataclass(frozen=True)
class Transversal:
    """Least-index coset representatives.

    For ``side="right"`` cosets are ``Hg`` and ``split(g)`` returns ``(h, rep)``
    with ``g = h * rep``; for ``side="left"`` cosets are ``gH`` and
    ``g = rep * h``.
    """

    subgroup: Subgroup
    side: str
    reps: tuple[int, ...]
    rep_of: np.ndarray = field(repr=False, compare=False)

    def split(self, g: int) -> tuple[int, int]:
        group = self.subgroup.parent
        rep = int(self.rep_of[g])
        if self.side == "right":
            return group.mul(g, group.inverse(rep)), rep
        return group.mul(group.inverse(rep), g), rep


def cosets(group: FiniteGroup, h: Subgroup, side: str = "right") -> Transversal:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    rep_of = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in group.elements:
        if rep_of[g] >= 0:
            continue
        reps.append(g)
        for x in h:
            y = group.mul(x, g) if side == "right" else group.mul(g, x)
            rep_of[y] = g
    rep_of.setflags(write=False)
    return Transversal(h, side, tuple(reps), rep_of)


def double_coset(group: FiniteGroup, h: Subgroup, a: int) -> frozenset[int]:
    return frozenset(group.prod(u, a, v) for u in h for v in h)


def normality_witness(group: FiniteGroup, h: Subgroup) -> tuple[int, int] | None:
    """Return ``(g, x)`` with ``g x g^-1`` outside ``h``, or None if ``h`` is normal."""
    for g in group.elements:
        gi = group.inverse(g)
        for x in h:
            if group.prod(g, x, gi) not in h:
                return g, x
    return None


def is_normal(group: FiniteGroup, h: Subgroup) -> bool:
    return normality_witness(group, h) is None


def quotient(group: FiniteGroup, h: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient by a normal subgroup; cosets are numbered in order of their least element."""
    w = normality_witness(group, h)
    if w is not None:
        g, x = w
        raise NotNormal(f"{g} * {x} * {g}^-1 is not in the subgroup")
    tr = cosets(group, h, "right")
    pos = {r: i for i, r in enumerate(tr.reps)}
    qmap = np.array([pos[int(tr.rep_of[g])] for g in group.elements], dtype=np.int64)
    mult = [[int(qmap[group.mul(a, b)]) for b in tr.reps] for a in tr.reps]
    names = [group.label(r) + "H" for r in tr.reps] if group.names else None
    q = FiniteGroup(mult, names=names, name=f"{group.name}/{len(h)}" if group.name else "")
    qmap.setflags(write=False)
    return q, qmap


# Case 2 fixed presentations -------------------------------------------------

@dataclass(frozen=True)
class FixedPresentationTable:
    """Chosen ``g = u * a^theta * u'`` for the elements of ``HaH``.

    Self-inverse elements of ``HaH`` cannot be paired with an opposite sign;
    they are listed in ``self_inverse`` and carry no entry.
    """

    a: int
    entries: Mapping[int, tuple[int, int, int]] = field(hash=False)
    self_inverse: tuple[int, ...] = ()


def fixed_presentation_table(group: FiniteGroup, h: Subgroup, a: int, strict: bool = False) -> FixedPresentationTable:
    hah = double_coset(group, h, a)
    ai = group.inverse(a)
    involutions = tuple(sorted(g for g in hah if group.inverse(g) == g))
    if involutions and strict:
        raise OrderTwoInDoubleCoset(f"HaH contains self-inverse elements {list(involutions)} for a={a}")
    entries: dict[int, tuple[int, int, int]] = {}
    for g in sorted(hah):
        if g in entries or g in involutions:
            continue
        gi = group.inverse(g)
        found = next(((u, v) for u in h for v in h if group.prod(u, a, v) == g), None)
        if found is None:
            # HaH = Ha^-1H is assumed here; a missing decomposition means it fails
            raise NoCase2Witness(f"{g} has no decomposition u*a*u' for a={a}")
        u, v = found
        entries[g] = (u, 1, v)
        entries[gi] = (group.inverse(v), -1, group.inverse(u))
    assert all(group.prod(u, group.power(a, th), v) == g for g, (u, th, v) in entries.items())
    assert ai in entries or ai in involutions
    return FixedPresentationTable(a, entries, involutions)


# Amalgam case classification -------------------------------------------------

@dataclass(frozen=True)
class CaseClassification:
    case: str  # "Case1" | "Case2Normal" | "Case2NonNormal"
    witness: tuple[int, int] | None  # (factor, element)
    index1: int
    index2: int
    normal1: bool
    normal2: bool
    fpt: FixedPresentationTable | None = None

    @property
    def hypotheses_hold(self) -> bool:
        lo, hi = sorted((self.index1, self.index2))
        return lo >= 2 and hi >= 3

    def to_json(self) -> dict:
        out = {
            "case": self.case,
            "witness": list(self.witness) if self.witness else None,
            "index_g1": self.index1,
            "index_g2": self.index2,
            "h_normal_in_g1": self.normal1,
            "h_normal_in_g2": self.normal2,
            "hypotheses_hold": self.hypotheses_hold,
        }
        if self.fpt is not None:
            out["fixed_presentations"] = {str(g): list(e) for g, e in sorted(self.fpt.entries.items())}
            out["self_inverse_excluded"] = list(self.fpt.self_inverse)
        return out


def classify_amalgam_case(g1: FiniteGroup, h1: Subgroup, g2: FiniteGroup, h2: Subgroup,
                          strict: bool = False) -> CaseClassification:
    """Split an amalgam into the double-coset cases.

    Case 1 takes precedence: the least ``a`` (factor 1 first) with
    ``HaH != Ha^-1H``. Otherwise H normal in both factors gives the quotient
    route, and otherwise the least ``a`` with ``aH != a^-1H`` is used with a
    fixed presentation table.
    """
    factors = ((1, g1, h1), (2, g2, h2))
    for f, g, h in factors:
        for a in g.elements:
            if a in h:
                continue
            if double_coset(g, h, a) != double_coset(g, h, g.inverse(a)):
                return CaseClassification("Case1", (f, a), h1.index, h2.index,
                                          is_normal(g1, h1), is_normal(g2, h2))
    n1, n2 = is_normal(g1, h1), is_normal(g2, h2)
    if n1 and n2:
        return CaseClassification("Case2Normal", None, h1.index, h2.index, n1, n2)
    for f, g, h in factors:
        for a in g.elements:
            left = frozenset(g.mul(a, x) for x in h)
            right = frozenset(g.mul(g.inverse(a), x) for x in h)
            if left != right:
                fpt = fixed_presentation_table(g, h, a, strict=strict)
                return CaseClassification("Case2NonNormal", (f, a), h1.index, h2.index, n1, n2, fpt)
    raise NoCase2Witness("H is not normal but every a satisfies aH = a^-1H")
