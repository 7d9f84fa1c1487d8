"""Definition-level reference implementations used only as test oracles.

These deliberately avoid the library's own shape enumeration and census code:
shapes are re-derived by filtering all t-subsets of columns for the per-block
prefix property, and counts use plain dict arithmetic on Python tuples.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


def prefix_subsets(n: int, r: int, t: int) -> list[tuple[int, ...]]:
    """All t-subsets of 0-based flat columns where each block's used depths
    form a contiguous prefix 1..k."""
    out = []
    for subset in itertools.combinations(range(n * r), t):
        ok = True
        for b in range(n):
            depths = sorted(c - b * r + 1 for c in subset if b * r <= c < (b + 1) * r)
            if depths != list(range(1, len(depths) + 1)):
                ok = False
                break
        if ok:
            out.append(subset)
    return out


def naive_verify_ooa(rows: list[tuple[int, ...]], q: int, n: int, r: int, t: int) -> bool:
    m = len(rows)
    if m == 0 or m % q**t != 0:
        return False
    lam = m // q**t
    for subset in prefix_subsets(n, r, t):
        census = Counter(tuple(row[c] for c in subset) for row in rows)
        if len(census) != q**t or any(c != lam for c in census.values()):
            return False
    return True


def naive_verify_oa(rows: list[tuple[int, ...]], q: int, t: int) -> bool:
    m = len(rows)
    if m == 0 or m % q**t != 0:
        return False
    lam = m // q**t
    ncols = len(rows[0])
    for subset in itertools.combinations(range(ncols), t):
        census = Counter(tuple(row[c] for c in subset) for row in rows)
        if len(census) != q**t or any(c != lam for c in census.values()):
            return False
    return True


def naive_violations(rows: list[tuple[int, ...]], q: int, n: int, r: int, t: int) -> int:
    lam = len(rows) // q**t
    total = 0
    for subset in prefix_subsets(n, r, t):
        census = Counter(tuple(row[c] for c in subset) for row in rows)
        for tup in itertools.product(range(q), repeat=t):
            total += abs(census.get(tup, 0) - lam)
    return total


def brute_force_min_size(q: int, n: int, r: int, t: int, mode: str,
                         max_lambda: int = 4) -> int | None:
    """Smallest feasible size by enumerating every row multiset/set outright."""
    all_rows = list(itertools.product(range(q), repeat=n * r))
    pick = (itertools.combinations_with_replacement if mode == "multiset"
            else itertools.combinations)
    for lam in range(1, max_lambda + 1):
        m = lam * q**t
        if mode == "set" and m > len(all_rows):
            continue
        for combo in pick(all_rows, m):
            if naive_verify_ooa(list(combo), q, n, r, t):
                return m
    return None


def fraction_rank(mat) -> int:
    """Rank over the rationals by plain Gaussian elimination on Fractions."""
    rows = [[Fraction(int(v)) for v in row] for row in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
