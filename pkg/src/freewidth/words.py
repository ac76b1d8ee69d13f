"""Letter-level helpers common to both constructions."""

from __future__ import annotations

from typing import Sequence, TypeVar

import numpy as np

L = TypeVar("L")


def hamming_to_palindrome(letters: Sequence) -> int:
    """Number of mismatched mirror pairs; each is fixed by one substitution."""
    n = len(letters)
    return sum(1 for i in range(n // 2) if letters[i] != letters[n - 1 - i])


def random_palindrome(alphabet: Sequence[L], length: int, rng: np.random.Generator) -> list[L]:
    half = [alphabet[i] for i in rng.integers(len(alphabet), size=length // 2)]
    middle = [alphabet[rng.integers(len(alphabet))]] if length % 2 else []
    return half + middle + half[::-1]


def mutate(letters: Sequence[L], alphabet: Sequence[L], count: int, rng: np.random.Generator) -> list[L]:
    """Replace ``count`` distinct positions (fewer if the word is short) with random letters."""
    out = list(letters)
    count = min(count, len(out))
    if count:
        for pos in rng.choice(len(out), size=count, replace=False):
            out[int(pos)] = alphabet[rng.integers(len(alphabet))]
    return out
