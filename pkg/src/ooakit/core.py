"""Block/column index model, shape enumeration, and exact shape counting.

An ordered array's n*r columns are grouped into n blocks of r ordered
columns. A shape is an n-tuple (t1, ..., tn) with 0 <= ti <= r summing to the
strength t; it selects the first ti columns of block i. Symbols are 0-based
throughout the toolkit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParams, InvalidStrength, SymbolOutOfRange

Shape = tuple[int, ...]


@dataclass(frozen=True, order=True)
class ColumnIndex:
    """One column, addressed as (block, depth), both 1-based."""

    block: int
    depth: int

    def __post_init__(self):
        if self.block < 1 or self.depth < 1:
            raise InvalidParams("block and depth are 1-based and positive")

    def flat(self, r: int) -> int:
        """1-based position in the flattened row for block depth r."""
        return (self.block - 1) * r + self.depth


@dataclass(frozen=True)
class ArrayParams:
    """The tuple (q, n, r, t, lambda) identifying an array class."""

    q: int
    n: int
    r: int
    t: int
    lam: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParams("alphabet size q must be >= 2")
        if self.n < 1 or self.r < 1:
            raise InvalidParams("block count n and depth r must be >= 1")
        if not 1 <= self.t <= self.n * self.r:
            raise InvalidStrength(f"strength {self.t} outside 1..{self.n * self.r}")
        if self.lam < 1:
            raise InvalidParams("multiplicity lambda must be >= 1")

    @property
    def num_rows(self) -> int:
        """M = lambda * q**t."""
        return self.lam * self.q**self.t


@dataclass(eq=False)
class SymbolArray:
    """An M x (n*r) grid of symbols in {0, ..., q-1} with block structure.

    t, when present, is the declared strength carried by array files; it is
    not validated against the grid until a verifier runs.
    """

    q: int
    n: int
    r: int
    rows: np.ndarray
    t: int | None = None

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParams("alphabet size q must be >= 2")
        if self.n < 1 or self.r < 0:
            raise InvalidParams("need n >= 1 blocks and depth r >= 0")
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim == 1 and rows.size == 0:
            rows = rows.reshape(0, self.n * self.r)
        if rows.ndim != 2 or rows.shape[1] != self.n * self.r:
            raise DimensionMismatch(
                f"rows have {rows.shape[1] if rows.ndim == 2 else '?'} columns, "
                f"expected n*r = {self.n * self.r}"
            )
        if rows.size and (rows.min() < 0 or rows.max() >= self.q):
            raise SymbolOutOfRange(f"symbols must lie in 0..{self.q - 1}")
        self.rows = rows

    @property
    def num_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def num_cols(self) -> int:
        return int(self.rows.shape[1])

    def row_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(row) for row in self.rows.tolist()]

    def same_grid(self, other: "SymbolArray") -> bool:
        return (
            (self.q, self.n, self.r) == (other.q, other.n, other.r)
            and np.array_equal(self.rows, other.rows)
        )


def enumerate_shapes(n: int, r: int, t: int) -> list[Shape]:
    """All n-tuples with parts in 0..r summing to t, in lexicographic order."""
    if n < 1 or r < 1:
        raise InvalidParams("need n >= 1 and r >= 1")
    if not 1 <= t <= n * r:
        raise InvalidStrength(f"strength {t} outside 1..{n * r}")
    out: list[Shape] = []
    parts = [0] * n

    def rec(i: int, remaining: int) -> None:
        if i == n - 1:
            if remaining <= r:
                parts[i] = remaining
                out.append(tuple(parts))
            return
        tail_cap = (n - 1 - i) * r
        for v in range(max(0, remaining - tail_cap), min(r, remaining) + 1):
            parts[i] = v
            rec(i + 1, remaining - v)

    rec(0, t)
    return out


def count_shapes(n: int, r: int, t: int) -> int:
    """Exact number of capped compositions: n parts in 0..r summing to t.

    Inclusion-exclusion over parts exceeding the cap r; exact big-integer
    arithmetic throughout. Returns 0 when t < 0 or t > n*r.
    """
    if n < 1 or r < 1:
        raise InvalidParams("need n >= 1 and r >= 1")
    if t < 0:
        return 0
    total = 0
    for j in range(0, min(n, t // (r + 1)) + 1):
        rem = t - j * (r + 1)
        total += (-1) ** j * math.comb(n, j) * math.comb(rem + n - 1, n - 1)
    return total


def shape_to_columns(shape: Shape, r: int) -> list[ColumnIndex]:
    """Prefix columns selected by a shape: depths 1..ti of block i, block-major."""
    for ti in shape:
        if not 0 <= ti <= r:
            raise InvalidParams(f"shape part {ti} outside 0..{r}")
    return [
        ColumnIndex(i + 1, d)
        for i, ti in enumerate(shape)
        for d in range(1, ti + 1)
    ]


def shape_flat0(shape: Shape, r: int) -> list[int]:
    """0-based flat column positions selected by a shape."""
    return [c.flat(r) - 1 for c in shape_to_columns(shape, r)]
