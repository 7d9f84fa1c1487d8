"""Plain-text formats: symbol array files and point-set files.

Array files carry a header line "q n r t M" followed by M data lines of n*r
space-separated symbols; lines starting with '#' are comments. Writing is
canonical (LF endings, single spaces), so parse/format round trips are
byte-identical up to comments. Point files hold one point per line, each
coordinate an exact rational like "3/4" or "0".
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .construct import PointSet
from .core import SymbolArray
from .errors import InvalidParams, ParseError


def format_array(array: SymbolArray, comments: tuple[str, ...] = ()) -> str:
    """Canonical text form of an array; requires a declared strength."""
    if array.t is None:
        raise InvalidParams("array has no declared strength to write")
    lines = [f"# {c}" for c in comments]
    lines.append(f"{array.q} {array.n} {array.r} {array.t} {array.num_rows}")
    for row in array.rows.tolist():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_array(text: str) -> SymbolArray:
    """Parse the canonical array format, reporting 1-based line numbers."""
    header: tuple[int, ...] | None = None
    header_line = 0
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line and lineno == len(text.splitlines()):
            continue
        if line.startswith("#"):
            continue
        if not line:
            raise ParseError("blank line inside array data", lineno)
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if len(values) != 5:
                raise ParseError("header must be 'q n r t M'", lineno)
            header = tuple(values)
            header_line = lineno
            q, n, r, t, m = header
            if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r or m < 0:
                raise ParseError(f"invalid header parameters {header}", lineno)
            continue
        q, n, r, t, m = header
        if len(values) != n * r:
            raise ParseError(
                f"expected {n * r} symbols per row, found {len(values)}", lineno
            )
        if any(not 0 <= v < q for v in values):
            raise ParseError(f"symbol outside 0..{q - 1}", lineno)
        if len(rows) >= m:
            raise ParseError(f"more than the declared {m} data rows", lineno)
        rows.append(values)
    if header is None:
        raise ParseError("missing header line 'q n r t M'", 1)
    q, n, r, t, m = header
    if len(rows) != m:
        raise ParseError(
            f"declared {m} rows but found {len(rows)}", header_line
        )
    grid = np.array(rows, dtype=np.int64).reshape(m, n * r)
    return SymbolArray(q, n, r, grid, t=t)


def write_array_file(path, array: SymbolArray, comments: tuple[str, ...] = ()) -> Path:
    path = Path(path)
    path.write_text(format_array(array, comments), encoding="utf-8", newline="\n")
    return path


def read_array_file(path) -> SymbolArray:
    return parse_array(Path(path).read_text(encoding="utf-8"))


def parse_points(text: str, base: int, precision: int) -> PointSet:
    """Parse one point per line, coordinates as exact rationals."""
    points: list[tuple[Fraction, ...]] = []
    dim: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            coords = tuple(Fraction(tok) for tok in line.split())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational in {line!r}", lineno) from None
        if dim is None:
            dim = len(coords)
        elif len(coords) != dim:
            raise ParseError(
                f"expected {dim} coordinates per point, found {len(coords)}", lineno
            )
        points.append(coords)
    if not points or dim is None:
        raise ParseError("no points found", 1)
    return PointSet(base=base, precision=precision, dimension=dim, points=points)


def read_points_file(path, base: int, precision: int) -> PointSet:
    return parse_points(Path(path).read_text(encoding="utf-8"), base, precision)
