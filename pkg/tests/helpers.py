"""Shared test utilities: random inputs and independent brute-force oracles.

Everything here is deliberately naive and separate from the library code so
it can serve as a second opinion.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd

from bredonkit import Alphabet, IntMatrix, Word


def random_word(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    n = len(alphabet)
    items = []
    for _ in range(length):
        idx = rng.randrange(n) + 1
        items.append(idx if rng.random() < 0.5 else -idx)
    return Word(alphabet, items)


def random_alphabet(rng: random.Random, max_generators: int = 5) -> Alphabet:
    n = rng.randint(1, max_generators)
    return Alphabet([f"g{i}" for i in range(n)])


def naive_random_order_reduce(rng: random.Random, code: list[int]) -> tuple[int, ...]:
    """Cancel inverse pairs in random order until none remain."""
    work = list(code)
    while True:
        spots = [i for i in range(len(work) - 1) if work[i] == -work[i + 1]]
        if not spots:
            return tuple(work)
        i = rng.choice(spots)
        del work[i : i + 2]


def root_by_divisor_search(w: Word) -> tuple[Word, int]:
    """Exhaust divisors of the cyclic core's length, largest exponent first."""
    dec = w.cyclic_decomposition()
    core = dec.core
    length = len(core)
    for k in range(length, 0, -1):
        if length % k:
            continue
        candidate = Word(w.alphabet, core.code[: length // k])
        if candidate**k == core:
            u = dec.conjugator
            return u * candidate * u.inverse(), k
    raise AssertionError("unreachable: k = 1 always works")


def random_matrix(rng: random.Random, max_dim: int = 5, bound: int = 9) -> IntMatrix:
    m = rng.randint(1, max_dim)
    n = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
    )


def det_by_expansion(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * rows[0][j] * det_by_expansion(minor)
    return total


def invariant_factors_by_minor_gcds(m: IntMatrix) -> list[int]:
    """d_k = gcd(k-minors) / gcd((k-1)-minors); 0 once the minors vanish."""
    rows = m.to_rows()
    size = min(m.rows, m.cols)
    gcds = [1]
    for k in range(1, size + 1):
        g = 0
        for row_idx in combinations(range(m.rows), k):
            for col_idx in combinations(range(m.cols), k):
                sub = [[rows[i][j] for j in col_idx] for i in row_idx]
                g = gcd(g, det_by_expansion(sub))
        gcds.append(g)
    factors = []
    for k in range(1, size + 1):
        if gcds[k] == 0:
            factors.append(0)
        else:
            factors.append(gcds[k] // gcds[k - 1])
    return factors


def rank_by_fraction_elimination(m: IntMatrix) -> int:
    """Row-echelon rank over the rationals, independent of the SNF code."""
    rows = [[Fraction(e) for e in row] for row in m.to_rows()]
    rank = 0
    col = 0
    while rank < len(rows) and col < m.cols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / lead
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank
