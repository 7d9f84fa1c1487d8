"""Constructions that produce ordered orthogonal arrays.

full_factorial emits the complete grid; ooa_to_oa / oa_to_ooa realize the two
column reductions between ordered and plain arrays; hermite_ooa builds the
optimal size-q**t family by evaluating polynomial Hasse derivatives at
distinct field points; points_to_array extracts base-q digits from a point
set so net quality can be decided by the verifier.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import SymbolArray
from .errors import (
    DimensionMismatch,
    DuplicatePoints,
    InexactCoordinate,
    InvalidParams,
    PointCountWarning,
    ScaleExceeded,
    TooFewPoints,
)
from .gf import FieldSpec, taylor_shift


@dataclass
class PointSet:
    """Points in [0,1)**dimension with exact base-q expansions of length m."""

    base: int
    precision: int
    dimension: int
    points: list[tuple[Fraction, ...]]

    def __post_init__(self):
        if self.base < 2 or self.precision < 0 or self.dimension < 1:
            raise InvalidParams("need base >= 2, precision >= 0, dimension >= 1")
        scale = self.base**self.precision
        pts = []
        for i, p in enumerate(self.points):
            coords = tuple(Fraction(c) for c in p)
            if len(coords) != self.dimension:
                raise InvalidParams(f"point {i} has {len(coords)} coordinates")
            for c in coords:
                if not 0 <= c < 1:
                    raise InexactCoordinate(f"coordinate {c} outside [0, 1)")
                if (c * scale).denominator != 1:
                    raise InexactCoordinate(
                        f"coordinate {c} has no exact base-{self.base} "
                        f"expansion of length {self.precision}"
                    )
            pts.append(coords)
        self.points = pts
        if len(pts) != scale:
            warnings.warn(
                f"{len(pts)} points given, {scale} expected for net checking",
                PointCountWarning,
                stacklevel=2,
            )


def full_factorial(q: int, n: int, r: int, *, max_rows: int = 1 << 16) -> SymbolArray:
    """All q**(n*r) rows in lexicographic order; balanced at every strength."""
    if q < 2 or n < 1 or r < 1:
        raise InvalidParams("need q >= 2, n >= 1, r >= 1")
    nr = n * r
    if q**nr > max_rows:
        raise ScaleExceeded(f"q**(n*r) = {q**nr} exceeds the cap {max_rows}")
    rows = np.array(list(itertools.product(range(q), repeat=nr)), dtype=np.int64)
    return SymbolArray(q, n, r, rows.reshape(q**nr, nr))


def ooa_to_oa(array: SymbolArray, n: int | None = None, r: int | None = None) -> SymbolArray:
    """Keep only the first column of every block; strength carries over."""
    n = array.n if n is None else n
    r = array.r if r is None else r
    if array.num_cols != n * r:
        raise DimensionMismatch(f"grid has {array.num_cols} columns, expected {n * r}")
    cols = [b * r for b in range(n)]
    return SymbolArray(array.q, n, 1, array.rows[:, cols], t=array.t)


def oa_to_ooa(array: SymbolArray, n: int, r: int) -> SymbolArray:
    """Reinterpret a plain array as n blocks of r consecutive columns."""
    if array.num_cols != n * r:
        raise DimensionMismatch(f"grid has {array.num_cols} columns, expected {n * r}")
    return SymbolArray(array.q, n, r, array.rows.copy(), t=array.t)


def _shift_basis_indices(field: FieldSpec, point, t: int, r: int) -> np.ndarray:
    """Index matrix B with B[i, j] = enumeration index of the j-th Taylor
    coefficient of the monomial x**i recentered at the point (0 beyond i)."""
    mat = np.zeros((t, r), dtype=np.int64)
    for i in range(t):
        mono = field.poly([0] * i + [1])
        shifted = taylor_shift(field, mono, point)
        for j in range(min(r, len(shifted))):
            mat[i, j] = field.index(shifted[j])
    return mat


def hermite_ooa(field: FieldSpec, n: int, r: int, t: int,
                points=None) -> SymbolArray:
    """Size-q**t ordered array from degree < t polynomials: the entry at
    (block i, depth j) is the (j-1)-th Hasse derivative of the row polynomial
    at the i-th evaluation point, written as its enumeration index.

    Every prefix-shape projection is a Hermite interpolation map and hence a
    bijection onto the q**t value tuples, so the verifier passes with
    multiplicity 1. Requires q >= n distinct evaluation points.
    """
    q = field.q
    if n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    if points is None:
        if q < n:
            raise TooFewPoints(f"field of size {q} cannot supply {n} distinct points")
        points = [field.element(i) for i in range(n)]
    else:
        points = [field.element(p) for p in points]
        if len(points) < n:
            raise TooFewPoints(f"{len(points)} points supplied, {n} needed")
        if len(points) != n:
            raise InvalidParams(f"{len(points)} points supplied, {n} needed")
        if len(set(points)) != n:
            raise DuplicatePoints("evaluation points must be pairwise distinct")

    add_t = field.add_index_table()
    mul_t = field.mul_index_table()
    num_rows = q**t
    coeffs = np.array(
        list(itertools.product(range(q), repeat=t)), dtype=np.int64
    ).reshape(num_rows, t)
    rows = np.zeros((num_rows, n * r), dtype=np.int64)
    for b, point in enumerate(points):
        basis = _shift_basis_indices(field, point, t, r)
        for j in range(r):
            acc = np.zeros(num_rows, dtype=np.int64)
            for i in range(t):
                if basis[i, j]:
                    acc = add_t[acc, mul_t[coeffs[:, i], basis[i, j]]]
            rows[:, b * r + j] = acc
    return SymbolArray(q, n, r, rows, t=t)


def points_to_array(ps: PointSet, digits: int) -> SymbolArray:
    """Digit-extraction grid: block i holds the first `digits` base-q digits
    (most significant first) of coordinate i of every point."""
    if not 0 <= digits <= ps.precision:
        raise InvalidParams(f"digits must lie in 0..{ps.precision}")
    q, m, s = ps.base, ps.precision, ps.dimension
    scale = q**m
    rows = np.zeros((len(ps.points), s * digits), dtype=np.int64)
    for i, point in enumerate(ps.points):
        for b, coord in enumerate(point):
            v = coord * scale
            if v.denominator != 1:
                raise InexactCoordinate(f"coordinate {coord} is not exact at precision {m}")
            v = int(v)
            for j in range(digits):
                rows[i, b * digits + j] = (v // q ** (m - 1 - j)) % q
    return SymbolArray(q, s, digits, rows)
