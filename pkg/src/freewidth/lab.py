"""Brute-force oracles and property suites for both constructions.

Everything here works on an ``HnnInstance`` or an ``AmalInstance``; the two
share the methods used below (``alphabet``, ``from_letters``, ``key``,
``multiply``, ``inverse``, ``f``, ``run_stats``, ``random_reduced_word``,
``shuffle``, ``witness_word``, ``plength_lower_bound`` and the bound
constants).
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BallCapExceeded, SuiteUnknown
from .words import hamming_to_palindrome, mutate, random_palindrome

BALL_CAP = 5_000_000
DEFAULT_MAX_LEN = 12
DEFAULT_MAX_K = 6
PRODUCT_CAP = 2_000_000


def default_workers() -> int:
    raw = os.environ.get("FREEWIDTH_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FREEWIDTH_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"FREEWIDTH_THREADS must be a positive integer, got {raw!r}")
    return n


# balls and palindrome sets ----------------------------------------------------------

@dataclass
class BallIndex:
    instance: object = field(repr=False)
    radius: int
    elements: dict  # normal form -> (shortest letter length, one shortest letter word)
    layers: list[int]

    def __len__(self) -> int:
        return len(self.elements)


def _generators(instance) -> list:
    """Letters that move the identity, deduplicated by element."""
    seen = {}
    ident = instance.key(instance.identity)
    for letter in instance.alphabet():
        k = instance.key(instance.from_letters([letter]))
        if k != ident and k not in seen:
            seen[k] = letter
    return list(seen.values())


def enumerate_ball(instance, radius: int, cap: int = BALL_CAP) -> BallIndex:
    """Breadth-first search over letter words; one entry per group element."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    gens = [(letter, instance.from_letters([letter])) for letter in _generators(instance)]
    ident = instance.key(instance.identity)
    elements = {ident: (0, ())}
    frontier = [(ident, ())]
    layers = [1]
    for length in range(1, radius + 1):
        nxt = []
        for w, letters in frontier:
            for letter, g in gens:
                k = instance.key(instance.multiply(w, g))
                if k not in elements:
                    elements[k] = (length, letters + (letter,))
                    nxt.append((k, letters + (letter,)))
                    if len(elements) > cap:
                        raise BallCapExceeded(f"ball exceeds {cap} elements at radius {length}")
        layers.append(len(nxt))
        frontier = nxt
    return BallIndex(instance, radius, elements, layers)


def enumerate_m_almost_palindromes(instance, max_len: int, m: int, cap: int = BALL_CAP) -> set:
    """Normal forms of all elements spelled by a word of length <= max_len with <= m mirror mismatches.

    Built outside-in: a word of length L with j mismatches is ``x v y`` with
    ``v`` of length L-2 and j - [x != y] mismatches.
    """
    if max_len < 0 or m < 0:
        raise ValueError("max_len and m must be nonnegative")
    letters = [instance.from_letters([x]) for x in instance.alphabet()]
    key = instance.key
    levels: dict[tuple[int, int], set] = {(0, 0): {key(instance.identity)}}
    if max_len >= 1:
        levels[(1, 0)] = {key(x) for x in letters}
    for length in range(2, max_len + 1):
        for j in range(0, min(m, length // 2) + 1):
            out = set()
            same = levels.get((length - 2, j), ())
            diff = levels.get((length - 2, j - 1), ()) if j else ()
            for v in same:
                for x in letters:
                    out.add(key(instance.multiply(x, v, x)))
            for v in diff:
                for ix, x in enumerate(letters):
                    for iy, y in enumerate(letters):
                        if ix != iy:
                            out.add(key(instance.multiply(x, v, y)))
            levels[(length, j)] = out
            if sum(len(s) for s in levels.values()) > cap:
                raise BallCapExceeded(f"palindrome sets exceed {cap} elements at length {length}")
    result = set()
    for s in levels.values():
        result |= s
    return result


class PlengthOracle:
    """Capped search for the least number of m-almost palindromic factors.

    Powers ``S_j`` of the palindrome set are materialised while
    ``|S_(j-1)| * |P|`` stays under ``product_cap``; longer products are
    tested by splitting. Calls return None (unknown) when no factorisation
    with at most ``max_k`` factors is found inside the caps.
    """

    def __init__(self, instance, m: int, max_len: int = DEFAULT_MAX_LEN, max_k: int = DEFAULT_MAX_K,
                 product_cap: int = PRODUCT_CAP, cap: int = BALL_CAP):
        self.instance = instance
        self.m = m
        self.max_len = max_len
        self.max_k = max_k
        self.palindromes = enumerate_m_almost_palindromes(instance, max_len, m, cap=cap)
        ident = instance.key(instance.identity)
        self.powers: list[set] = [{ident}, self.palindromes]
        pal = list(self.palindromes)
        self.closed = False  # True once S_j = S_(j+1): every later power is the same set
        while len(self.powers) <= max_k and len(self.powers[-1]) * len(pal) <= product_cap:
            nxt = {instance.key(instance.multiply(x, p)) for x in self.powers[-1] for p in pal}
            if nxt == self.powers[-1]:
                self.closed = True
                break
            self.powers.append(nxt)

    def _contains(self, key, k: int) -> bool | None:
        top = len(self.powers) - 1
        if k <= top:
            return key in self.powers[k]
        if self.closed:
            return key in self.powers[top]
        rest = k - top
        if rest > top:
            return None
        inst = self.instance
        return any(inst.key(inst.multiply(inst.inverse(x), key)) in self.powers[top] for x in self.powers[rest])

    def __call__(self, g) -> int | None:
        key = self.instance.key(g)
        for k in range(self.max_k + 1):
            hit = self._contains(key, k)
            if hit is None:
                return None
            if hit:
                return k
        return None


def plength_oracle(instance, g, m: int, max_len: int = DEFAULT_MAX_LEN, max_k: int = DEFAULT_MAX_K) -> int | None:
    return PlengthOracle(instance, m, max_len=max_len, max_k=max_k)(g)


# property suites ---------------------------------------------------------------------------

SUITES = ("defect", "nfold", "palindrome", "almost", "product", "signature-uniqueness",
          "syllable-length", "inverse-symmetry", "oracle-consistency")


@dataclass
class SuiteReport:
    suite: str
    construction: str
    samples: int
    seed: int
    max_value: int
    max_excess: int
    bound: str
    violations: list = field(default_factory=list)
    max_upper_excess: int | None = None  # defect suites: max of f(prod) - sum f - bound
    runtime: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        # runtime is left out so that reports are reproducible byte for byte
        return {
            "suite": self.suite,
            "construction": self.construction,
            "samples": self.samples,
            "seed": self.seed,
            "max_value": self.max_value,
            "max_excess": self.max_excess,
            "bound": self.bound,
            "violations": self.violations,
            "ok": self.ok,
            "max_upper_excess": self.max_upper_excess,
        }


def _palindrome_word(inst, rng, max_len: int, m: int):
    alphabet = inst.alphabet()
    letters = random_palindrome(alphabet, int(rng.integers(max_len + 1)), rng)
    letters = mutate(letters, alphabet, int(rng.integers(m + 1)), rng)
    assert hamming_to_palindrome(letters) <= m
    return letters


def _sample(inst, suite: str, i: int, rng: np.random.Generator, opts: dict):
    """Return ``(value, bound, detail[, upper_excess])`` for one sample; a violation is value > bound.

    The defect suites also return the one-sided excess ``f(prod) - sum f - bound``.
    """
    max_len = opts["max_len"]
    if suite == "defect":
        w1 = inst.random_reduced_word(int(rng.integers(max_len + 1)), rng)
        w2 = inst.random_reduced_word(int(rng.integers(max_len + 1)), rng)
        diff = inst.f(inst.multiply(w1, w2)) - inst.f(w1) - inst.f(w2)
        return abs(diff), inst.DEFECT, (inst.format(w1), inst.format(w2)), diff - inst.DEFECT
    if suite == "nfold":
        n = int(rng.integers(2, 7))
        ws = [inst.random_reduced_word(int(rng.integers(max_len + 1)), rng) for _ in range(n)]
        diff = inst.f(inst.multiply(*ws)) - sum(inst.f(w) for w in ws)
        return abs(diff), inst.DEFECT * (n - 1), [inst.format(w) for w in ws], diff - inst.DEFECT * (n - 1)
    if suite == "palindrome":
        letters = _palindrome_word(inst, rng, opts["pal_len"], 0)
        w = inst.reduce(inst.from_letters(letters))
        for _ in range(int(rng.integers(4))):
            w = inst.shuffle(w, rng)
        return inst.f(w), inst.palindrome_bound(0), inst.format_letters(letters)
    if suite == "almost":
        m = opts["m"] if opts["m"] is not None else 1 + i % 3
        letters = _palindrome_word(inst, rng, opts["pal_len"], m)
        return inst.f(inst.from_letters(letters)), inst.palindrome_bound(m), inst.format_letters(letters)
    if suite == "product":
        k = opts["k"] if opts["k"] is not None else 2 + i % 3
        m = opts["m"] if opts["m"] is not None else (i // 3) % 2
        words = [_palindrome_word(inst, rng, opts["pal_len"], m) for _ in range(k)]
        u = inst.multiply(*(inst.from_letters(x) for x in words))
        return inst.f(u), inst.product_bound(k, m), [inst.format_letters(x) for x in words]
    if suite == "signature-uniqueness":
        w = inst.random_reduced_word(int(rng.integers(max_len + 1)), rng)
        sigs = {inst.signature(w)}
        for _ in range(opts["shuffles"]):
            s = inst.shuffle(w, rng)
            if not (inst.is_reduced(s) and inst.equals(s, w)):
                return 1, 0, ("bad shuffle", inst.format(w), inst.format(s))
            sigs.add(s.betas)
        return len(sigs) - 1, 0, inst.format(w)
    if suite == "syllable-length":
        w = inst.random_reduced_word(int(rng.integers(max_len + 1)), rng)
        lengths = {len(w)}
        for _ in range(opts["shuffles"]):
            s = inst.shuffle(w, rng)
            if not inst.equals(s, w):
                return 1, 0, ("bad shuffle", inst.format(w), inst.format(s))
            lengths.add(inst.syllable_length(s))
        return len(lengths) - 1, 0, inst.format(w)
    if suite == "inverse-symmetry":
        w = inst.random_reduced_word(int(rng.integers(max_len + 1)), rng)
        a, b = inst.run_stats(w), inst.run_stats(inst.inverse(w))
        da, db = a.d, b.d
        v = abs(a.f - b.f) + sum(abs(da.get(k, 0) + db.get(k, 0)) for k in set(da) | set(db))
        return v, 0, inst.format(w)
    raise SuiteUnknown(suite)


def _run_chunk(args):
    inst, suite, seed, indices, opts = args
    out = []
    for i in indices:
        rng = np.random.default_rng([seed, i])
        res = _sample(inst, suite, i, rng, opts)
        out.append((i,) + res[:3] + (res[3] if len(res) > 3 else None,))
    return out


_BOUND_TEXT = {
    "defect": "|f(uv) - f(u) - f(v)| <= {d}",
    "nfold": "|f(w1...wn) - sum f(wi)| <= {d}(n-1)",
    "palindrome": "f(p) <= {p0}",
    "almost": "f <= {pm}",
    "product": "f <= {pk}",
    "signature-uniqueness": "distinct signatures across shuffles - 1 <= 0",
    "syllable-length": "distinct syllable lengths across shuffles - 1 <= 0",
    "inverse-symmetry": "|f(w^-1) - f(w)| + sum_k |d_k(w) + d_k(w^-1)| <= 0",
    "oracle-consistency": "plength_oracle >= plength_lower_bound",
}


def verify_suite(instance, suite: str, samples: int = 1000, seed: int = 0, *, m: int | None = None,
                 k: int | None = None, max_len: int = 30, pal_len: int = 31, shuffles: int = 50,
                 radius: int = 6, oracle_max_len: int = DEFAULT_MAX_LEN, max_k: int = DEFAULT_MAX_K,
                 workers: int | None = None) -> SuiteReport:
    """Run one named property over seeded samples and collect every violation.

    Sample ``i`` draws from ``default_rng([seed, i])``, so the report does
    not depend on the number of workers.
    """
    if suite not in SUITES:
        raise SuiteUnknown(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if suite == "signature-uniqueness" and instance.kind != "hnn":
        raise SuiteUnknown("signature-uniqueness applies to HNN extensions; use syllable-length")
    if suite == "syllable-length" and instance.kind != "amalgam":
        raise SuiteUnknown("syllable-length applies to amalgams; use signature-uniqueness")
    start = time.perf_counter()
    name = getattr(instance, "name", "") or instance.kind
    if suite == "oracle-consistency":
        report = _oracle_consistency(instance, m or 0, radius, oracle_max_len, max_k, seed)
        report.runtime = time.perf_counter() - start
        return report

    opts = dict(m=m, k=k, max_len=max_len, pal_len=pal_len, shuffles=shuffles)
    workers = workers or default_workers()
    idx = list(range(samples))
    if workers > 1 and samples > 1:
        chunks = [idx[j::workers] for j in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_chunk, [(instance, suite, seed, c, opts) for c in chunks])
            results = sorted(r for part in parts for r in part)
    else:
        results = _run_chunk((instance, suite, seed, idx, opts))

    violations = [{"sample": i, "value": v, "bound": b, "detail": d} for i, v, b, d, _ in results if v > b]
    uppers = [u for *_, u in results if u is not None]
    text = _BOUND_TEXT[suite].format(d=instance.DEFECT, p0=instance.palindrome_bound(0),
                                     pm="palindrome_bound(m)" if m is None else instance.palindrome_bound(m),
                                     pk="product_bound(k, m)" if (m is None or k is None)
                                     else instance.product_bound(k, m))
    return SuiteReport(
        suite=suite,
        construction=name,
        samples=samples,
        seed=seed,
        max_value=max((v for _, v, _, _, _ in results), default=0),
        max_excess=max((v - b for _, v, b, _, _ in results), default=0),
        max_upper_excess=max(uppers) if uppers else None,
        bound=text,
        violations=violations,
        runtime=time.perf_counter() - start,
    )


def _oracle_consistency(instance, m: int, radius: int, max_len: int, max_k: int, seed: int) -> SuiteReport:
    ball = enumerate_ball(instance, radius)
    oracle = PlengthOracle(instance, m, max_len=max_len, max_k=max_k)
    violations = []
    worst = 0
    excess = 0
    for key in ball.elements:
        k = oracle(key)
        if k is None:
            continue
        lb = instance.plength_lower_bound(key, m)
        worst = max(worst, k)
        excess = max(excess, lb - k)
        if k < lb:
            violations.append({"element": instance.format(key), "oracle": k, "lower_bound": lb})
    return SuiteReport("oracle-consistency", getattr(instance, "name", "") or instance.kind, len(ball), seed,
                       worst, excess, _BOUND_TEXT["oracle-consistency"], violations)


# growth certificates --------------------------------------------------------------------------

@dataclass
class GrowthReport:
    m: int
    rows: list  # (K, f, lower bound)
    monotone: bool
    first_exceeding: dict  # c -> least K whose bound exceeds c

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "rows": [{"K": K, "f": f, "bound": b} for K, f, b in self.rows],
            "monotone": self.monotone,
            "first_K_exceeding": {str(c): K for c, K in sorted(self.first_exceeding.items())},
        }


def growth_table(instance, ms, K_max: int) -> dict[int, GrowthReport]:
    """Growth reports for several ``m`` at once; ``f`` is computed once per witness."""
    fs = []
    for K in range(1, K_max + 1):
        w = instance.witness_word(K)
        fs.append((K, instance.f(w)))
    out = {}
    for m in ms:
        rows = [(K, f, instance.lower_bound_from_f(f, m)) for K, f in fs]
        bounds = [b for _, _, b in rows]
        monotone = all(x <= y for x, y in zip(bounds, bounds[1:]))
        first: dict[int, int] = {}
        for K, _, b in rows:
            for c in range(b):
                first.setdefault(c, K)
        out[m] = GrowthReport(m, rows, monotone, first)
    return out


def growth_report(instance, m: int, K_max: int) -> GrowthReport:
    """f and the palindromic-length lower bound along the witness family ``K = 1..K_max``."""
    return growth_table(instance, [m], K_max)[m]
