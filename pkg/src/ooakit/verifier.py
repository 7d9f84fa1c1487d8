"""Decide ordered-array and plain-array balance with per-selection evidence.

verify_ooa checks every prefix shape; verify_oa checks every t-subset of
columns. Both report the offending column selection, tuple, observed count,
and expected count for each violation, in a deterministic order.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .core import ColumnIndex, SymbolArray, enumerate_shapes, shape_flat0
from .errors import (
    ColumnOutOfRange,
    CombinatorialBlowup,
    DimensionMismatch,
    InvalidParams,
    SymbolOutOfRange,
)

# Selections whose alphabet q**t exceeds this are reported from observed
# tuples only (missing tuples are not enumerated exhaustively).
_FULL_WALK_CAP = 1 << 20


@dataclass(frozen=True)
class Failure:
    """One unbalanced tuple in one column selection."""

    shape: tuple[int, ...] | None  # prefix shape for ooa reports, None for oa
    columns: tuple[int, ...]       # 1-based flat column positions, ascending
    symbols: tuple[int, ...]       # the offending t-tuple
    observed: int
    expected: int


@dataclass
class VerifyReport:
    passed: bool
    kind: str                      # "ooa" or "oa"
    strength: int
    lambda_observed: int | None
    failures: list[Failure] = field(default_factory=list)
    truncated: bool = False
    reason: str | None = None
    selections_checked: int = 0


def project_columns(array: SymbolArray, columns: list[ColumnIndex]) -> np.ndarray:
    """Restrict every row to the given columns, preserving their order."""
    flats = []
    for c in columns:
        if not (1 <= c.block <= array.n and 1 <= c.depth <= array.r):
            raise ColumnOutOfRange(f"column {c} outside {array.n} blocks of depth {array.r}")
        flats.append(c.flat(array.r) - 1)
    return array.rows[:, flats] if flats else array.rows[:, :0]


def tuple_census(sub, q: int) -> Counter:
    """Count each row tuple of a projected grid; absent tuples count 0."""
    arr = np.asarray(sub, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.size and (arr.min() < 0 or arr.max() >= q):
        raise SymbolOutOfRange(f"symbols must lie in 0..{q - 1}")
    return Counter(tuple(row) for row in arr.tolist())


def _decode(code: int, q: int, t: int) -> tuple[int, ...]:
    digits = []
    for _ in range(t):
        code, d = divmod(code, q)
        digits.append(d)
    return tuple(reversed(digits))


def _selection_deviations(rows: np.ndarray, cols0: list[int], q: int,
                          lam: int, limit: int) -> tuple[list[tuple[tuple[int, ...], int]], bool]:
    """Census one column selection and list up to `limit` deviations from lam,
    in lexicographic tuple order. Returns (deviations, complete)."""
    t = len(cols0)
    sub = rows[:, cols0]
    space = q**t
    if space <= np.iinfo(np.int64).max // max(q, 2):
        weights = np.array([q ** (t - 1 - i) for i in range(t)], dtype=np.int64)
        codes = sub @ weights
        uniq, counts = np.unique(codes, return_counts=True)
        if len(uniq) == space and (counts == lam).all():
            return [], True
        present = dict(zip(uniq.tolist(), counts.tolist()))
    else:
        census = Counter(tuple(row) for row in sub.tolist())
        if len(census) == space and all(c == lam for c in census.values()):
            return [], True
        present = {
            int(sum(v * q ** (t - 1 - i) for i, v in enumerate(key))): c
            for key, c in census.items()
        }
    out: list[tuple[tuple[int, ...], int]] = []
    if space <= _FULL_WALK_CAP:
        for code in range(space):
            c = present.get(code, 0)
            if c != lam:
                out.append((_decode(code, q, t), c))
                if len(out) >= limit:
                    return out, False
        return out, True
    for code in sorted(present):
        c = present[code]
        if c != lam:
            out.append((_decode(code, q, t), c))
            if len(out) >= limit:
                return out, False
    return out, False  # missing tuples not enumerated at this scale


def _resolve_dims(array: SymbolArray, q, n, r) -> tuple[int, int, int]:
    q = array.q if q is None else q
    n = array.n if n is None else n
    r = array.r if r is None else r
    if array.rows.shape[1] != n * r:
        raise DimensionMismatch(
            f"grid has {array.rows.shape[1]} columns but n*r = {n * r}"
        )
    if q < array.q or (array.rows.size and array.rows.max() >= q):
        raise SymbolOutOfRange(f"grid symbols do not fit alphabet of size {q}")
    return q, n, r


def _fast_fail_checks(rows: np.ndarray, q: int, t: int, kind: str,
                      strict_set: bool) -> VerifyReport | None:
    M = rows.shape[0]
    qt = q**t
    if M == 0 or M % qt != 0:
        return VerifyReport(
            False, kind, t, None,
            reason=f"row count {M} is not a positive multiple of q**t = {qt}",
        )
    if strict_set:
        seen = set(map(tuple, rows.tolist()))
        if len(seen) != M:
            return VerifyReport(
                False, kind, t, None,
                reason="duplicate rows rejected in strict-set mode",
            )
    return None


def verify_ooa(array: SymbolArray, q: int | None = None, n: int | None = None,
               r: int | None = None, t: int | None = None, *,
               lam: int | None = None, max_failures: int = 100,
               strict_set: bool = False, threads: int = 1) -> VerifyReport:
    """Check that every prefix-shape selection is balanced with one common
    multiplicity lambda = M / q**t."""
    q, n, r = _resolve_dims(array, q, n, r)
    if t is None:
        t = array.t
    if t is None:
        raise InvalidParams("strength t is required")
    if not 1 <= t <= n * r:
        raise InvalidParams(f"strength {t} outside 1..{n * r}")
    rows = array.rows
    fast = _fast_fail_checks(rows, q, t, "ooa", strict_set)
    if fast is not None:
        return fast
    M = rows.shape[0]
    lam_target = M // q**t
    if lam is not None and lam != lam_target:
        raise InvalidParams(
            f"declared lambda {lam} disagrees with M / q**t = {lam_target}"
        )
    shapes = enumerate_shapes(n, r, t)
    per_shape_limit = max_failures + 1

    def job(shape):
        cols0 = shape_flat0(shape, r)
        devs, complete = _selection_deviations(rows, cols0, q, lam_target, per_shape_limit)
        return shape, cols0, devs, complete

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(job, shapes))
    else:
        results = [job(s) for s in shapes]

    failures: list[Failure] = []
    truncated = False
    for shape, cols0, devs, complete in results:
        cols1 = tuple(c + 1 for c in cols0)
        for symbols, observed in devs:
            if len(failures) >= max_failures:
                truncated = True
                break
            failures.append(Failure(shape, cols1, symbols, observed, lam_target))
        if not complete:
            truncated = True
    passed = not failures and not truncated
    return VerifyReport(
        passed, "ooa", t, lam_target if passed else None,
        failures, truncated, None, len(shapes),
    )


def verify_oa(array: SymbolArray, q: int | None = None, t: int | None = None, *,
              lam: int | None = None, max_failures: int = 100,
              strict_set: bool = False, subset_cap: int = 100_000,
              threads: int = 1) -> VerifyReport:
    """Check that every t-subset of columns is balanced (no block structure)."""
    q = array.q if q is None else q
    if q < array.q or (array.rows.size and array.rows.max() >= q):
        raise SymbolOutOfRange(f"grid symbols do not fit alphabet of size {q}")
    if t is None:
        t = array.t
    if t is None:
        raise InvalidParams("strength t is required")
    ncols = array.num_cols
    if not 1 <= t <= ncols:
        raise InvalidParams(f"strength {t} outside 1..{ncols}")
    n_subsets = comb(ncols, t)
    if n_subsets > subset_cap:
        raise CombinatorialBlowup(
            f"{n_subsets} column subsets exceed the cap {subset_cap}"
        )
    rows = array.rows
    fast = _fast_fail_checks(rows, q, t, "oa", strict_set)
    if fast is not None:
        return fast
    M = rows.shape[0]
    lam_target = M // q**t
    if lam is not None and lam != lam_target:
        raise InvalidParams(
            f"declared lambda {lam} disagrees with M / q**t = {lam_target}"
        )
    subsets = list(itertools.combinations(range(ncols), t))
    per_limit = max_failures + 1

    def job(cols0):
        devs, complete = _selection_deviations(rows, list(cols0), q, lam_target, per_limit)
        return cols0, devs, complete

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(job, subsets))
    else:
        results = [job(s) for s in subsets]

    failures: list[Failure] = []
    truncated = False
    for cols0, devs, complete in results:
        cols1 = tuple(c + 1 for c in cols0)
        for symbols, observed in devs:
            if len(failures) >= max_failures:
                truncated = True
                break
            failures.append(Failure(None, cols1, symbols, observed, lam_target))
        if not complete:
            truncated = True
    passed = not failures and not truncated
    return VerifyReport(
        passed, "oa", t, lam_target if passed else None,
        failures, truncated, None, len(subsets),
    )
