"""Executable model of the KLP-style test-function space at desk scale.

The space is spanned by indicator functions of partial symbol assignments on
prefix-shaped column sets. Restricting domains to arbitrary subprefix sets and
dropping the sentinel symbol q-1 from the codomain yields a reduced family
whose indicators form a basis with an explicit signed integer dual. certify()
re-derives conditions C1-C5, the lattice identity, and the spanning recursion
for a concrete parameter set, recording a concrete witness for any failure.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import ColumnIndex, enumerate_shapes, shape_to_columns
from .errors import InvalidParams, ScaleExceeded

DomainSet = tuple[ColumnIndex, ...]


@dataclass(frozen=True)
class PartialAssignment:
    """Symbols pinned on a sorted subset of columns.

    kind "full": the domain is a whole prefix shape (t columns) and values
    range over all q symbols. kind "reduced": the domain is any subprefix set
    and values exclude the sentinel symbol q-1.
    """

    domain: DomainSet
    values: tuple[int, ...]
    kind: str = "reduced"

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise InvalidParams("one value per domain column required")
        if self.kind not in ("full", "reduced"):
            raise InvalidParams("kind must be 'full' or 'reduced'")

    def items(self):
        return zip(self.domain, self.values)


def _flat0(col: ColumnIndex, r: int) -> int:
    return (col.block - 1) * r + col.depth - 1


def _block_maxdepth_sum(cols: Sequence[ColumnIndex]) -> int:
    deepest: dict[int, int] = {}
    for c in cols:
        deepest[c.block] = max(deepest.get(c.block, 0), c.depth)
    return sum(deepest.values())


def enumerate_domain_family(n: int, r: int, t: int, *,
                            max_cols: int = 12) -> list[DomainSet]:
    """Every column subset whose per-block deepest positions sum to at most t,
    i.e. every subset of some prefix shape. Sorted by size, then position."""
    if n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    nr = n * r
    if nr > max_cols:
        raise ScaleExceeded(f"{nr} columns exceed the desk-scale cap {max_cols}")
    all_cols = [ColumnIndex(b, d) for b in range(1, n + 1) for d in range(1, r + 1)]
    out: list[DomainSet] = []
    for mask in range(1 << nr):
        cols = tuple(all_cols[i] for i in range(nr) if mask >> i & 1)
        if _block_maxdepth_sum(cols) <= t:
            out.append(cols)
    out.sort(key=lambda cols: (len(cols), tuple(_flat0(c, r) for c in cols)))
    return out


def enumerate_reduced_assignments(q: int, n: int, r: int, t: int, *,
                                  max_cols: int = 12) -> list[PartialAssignment]:
    """All assignments T -> {0, ..., q-2} over the domain family, in
    deterministic order (domains first, then values lexicographic)."""
    if q < 2:
        raise InvalidParams("alphabet size q must be >= 2")
    out = []
    for dom in enumerate_domain_family(n, r, t, max_cols=max_cols):
        for vals in itertools.product(range(q - 1), repeat=len(dom)):
            out.append(PartialAssignment(dom, vals, "reduced"))
    return out


def enumerate_full_assignments(q: int, n: int, r: int, t: int) -> list[PartialAssignment]:
    """All assignments S -> {0, ..., q-1} with S a whole prefix shape."""
    if q < 2:
        raise InvalidParams("alphabet size q must be >= 2")
    out = []
    for shape in enumerate_shapes(n, r, t):
        cols = tuple(shape_to_columns(shape, r))
        for vals in itertools.product(range(q), repeat=len(cols)):
            out.append(PartialAssignment(cols, vals, "full"))
    return out


def count_reduced_assignments(q: int, n: int, r: int, t: int) -> int:
    """Closed-form count of the reduced family, by dynamic programming over
    per-block deepest pinned positions; a block whose deepest pinned depth is
    d > 0 contributes (q-1) * q**(d-1) weighted subsets, an empty block 1."""
    if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    weight = [1] + [(q - 1) * q ** (d - 1) for d in range(1, r + 1)]
    dp = [0] * (t + 1)
    dp[0] = 1
    for _ in range(n):
        new = [0] * (t + 1)
        for used, ways in enumerate(dp):
            if ways:
                for d in range(0, min(r, t - used) + 1):
                    new[used + d] += ways * weight[d]
        dp = new
    return sum(dp)


def indicator_value(a: PartialAssignment, x: Sequence[int], r: int) -> int:
    """1 when the point agrees with every pinned symbol, else 0."""
    for col, v in a.items():
        if x[_flat0(col, r)] != v:
            return 0
    return 1


def precedes(a: PartialAssignment, b: PartialAssignment) -> bool:
    """Domain containment with agreement on the smaller domain."""
    pinned = dict(b.items())
    return all(col in pinned and pinned[col] == v for col, v in a.items())


def sentinel_extension(b: PartialAssignment, q: int, n: int, r: int) -> tuple[int, ...]:
    """Extend a reduced assignment to a full point, filling every unpinned
    position with the sentinel symbol q-1."""
    x = [q - 1] * (n * r)
    for col, v in b.items():
        x[_flat0(col, r)] = v
    return tuple(x)


def dual_value(b: PartialAssignment, x: Sequence[int], q: int, r: int) -> int:
    """Signed dual weight of a point against a reduced assignment.

    Nonzero exactly on the sentinel extensions of the assignments below b in
    the agreement order; the sign alternates with the number of dropped
    domain columns.
    """
    pinned = {_flat0(col, r): v for col, v in b.items()}
    kept = 0
    sentinel = q - 1
    for i, xi in enumerate(x):
        if i in pinned:
            if xi == sentinel:
                continue  # this domain column was dropped from the sub-assignment
            if xi != pinned[i]:
                return 0
            kept += 1
        elif xi != sentinel:
            return 0
    return (-1) ** (len(b.domain) - kept)


def _points(q: int, nr: int, scale_cap: int) -> np.ndarray:
    if q**nr > scale_cap:
        raise ScaleExceeded(f"q**(n*r) = {q**nr} exceeds the cap {scale_cap}")
    return np.array(list(itertools.product(range(q), repeat=nr)), dtype=np.int64).reshape(q**nr, nr)


def _indicator_columns(pts: np.ndarray, assignments: Sequence[PartialAssignment],
                       r: int) -> np.ndarray:
    mat = np.empty((pts.shape[0], len(assignments)), dtype=np.int64)
    for j, a in enumerate(assignments):
        col = np.ones(pts.shape[0], dtype=bool)
        for c, v in a.items():
            col &= pts[:, _flat0(c, r)] == v
        mat[:, j] = col
    return mat


def indicator_matrix(q: int, n: int, r: int, t: int, *,
                     scale_cap: int = 1 << 16) -> np.ndarray:
    """Point-by-assignment 0/1 matrix of the reduced family. Rows follow the
    lexicographic point order, columns the enumerate_reduced_assignments order."""
    pts = _points(q, n * r, scale_cap)
    return _indicator_columns(pts, enumerate_reduced_assignments(q, n, r, t), r)


def dual_matrix(q: int, n: int, r: int, t: int, *,
                scale_cap: int = 1 << 16) -> np.ndarray:
    """Point-by-assignment signed dual matrix, column order as above. Each
    column is supported on the 2**|domain| sentinel extensions below it."""
    nr = n * r
    if q**nr > scale_cap:
        raise ScaleExceeded(f"q**(n*r) = {q**nr} exceeds the cap {scale_cap}")
    reduced = enumerate_reduced_assignments(q, n, r, t)
    powers = [q ** (nr - 1 - i) for i in range(nr)]
    mat = np.zeros((q**nr, len(reduced)), dtype=np.int64)
    for j, b in enumerate(reduced):
        dom = list(b.items())
        size = len(dom)
        for keep_mask in range(1 << size):
            sub = [dom[i] for i in range(size) if keep_mask >> i & 1]
            x = [q - 1] * nr
            for col, v in sub:
                x[_flat0(col, r)] = v
            idx = sum(p * xv for p, xv in zip(powers, x))
            mat[idx, j] = (-1) ** (size - len(sub))
    return mat


def integer_rank(mat) -> int:
    """Exact rank over the rationals via fraction-free Gaussian elimination."""
    rows = [list(map(int, row)) for row in np.asarray(mat)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col]
            for j in range(ncols):
                rows[i][j] = (rows[i][j] * lead - factor * rows[rank][j]) // prev
        prev = lead
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass
class CheckResult:
    passed: bool
    witness: dict | None = None
    detail: dict = field(default_factory=dict)


@dataclass
class CertReport:
    q: int
    n: int
    r: int
    t: int
    checks: dict[str, CheckResult]
    constants: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _assignment_key(a: PartialAssignment) -> tuple:
    return (a.domain, a.values)


def _describe(a: PartialAssignment, r: int) -> dict:
    return {
        "columns": [c.flat(r) for c in a.domain],
        "values": list(a.values),
    }


def certify(q: int, n: int, r: int, t: int, *, scale_cap: int = 1 << 16,
            spanning_samples: int = 200, seed: int = 0) -> CertReport:
    """Run every structural check on one parameter set and report witnesses.

    C1: indicator columns of the full family sum to the shape count at every
        point, so constants are in the span.
    C2: translating every point by any fixed point permutes the full family
        onto itself (the explicit shifted assignment is verified).
    C3: each reduced column sums to q**(nr - |domain|); scaling means by q**t
        always lands on integers, and a full-size domain witnesses minimality.
    C4: both families are 0/1 valued, so sup norms are exactly 1.
    C5: the signed dual family is biorthogonal to the reduced family with
        m = 1, and each dual column has 1-norm 2**|domain| <= 2**t.
    lattice: the dual combinations of the point rows hit every standard basis
        vector, so the integer row span is the full integer lattice.
    spanning: the one-column elimination recursion holds on sampled (and,
        when small, all) sentinel-bearing assignments, and each reduced
        indicator is the sum of its full-family extensions.
    """
    if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    nr = n * r
    pts = _points(q, nr, scale_cap)
    num_pts = pts.shape[0]
    powers = np.array([q ** (nr - 1 - i) for i in range(nr)], dtype=np.int64)
    shapes = enumerate_shapes(n, r, t)
    full = enumerate_full_assignments(q, n, r, t)
    reduced = enumerate_reduced_assignments(q, n, r, t)
    full_index = {_assignment_key(a): j for j, a in enumerate(full)}
    ind_full = _indicator_columns(pts, full, r)
    ind_red = _indicator_columns(pts, reduced, r)
    dual = dual_matrix(q, n, r, t, scale_cap=scale_cap)
    checks: dict[str, CheckResult] = {}

    # C1: constant functions lie in the span.
    row_sums = ind_full.sum(axis=1)
    bad = np.nonzero(row_sums != len(shapes))[0]
    checks["C1"] = CheckResult(
        passed=bad.size == 0,
        witness=None if bad.size == 0 else {
            "point": pts[bad[0]].tolist(),
            "sum": int(row_sums[bad[0]]),
            "expected": len(shapes),
        },
        detail={"num_shapes": len(shapes)},
    )

    # C2: closure of the full family under all point translations.
    flats_per_a = [[_flat0(c, r) for c in a.domain] for a in full]
    c2_witness = None
    for xi in range(num_pts):
        x = pts[xi]
        perm = ((pts + x) % q) @ powers
        targets = np.empty(len(full), dtype=np.int64)
        for j, a in enumerate(full):
            shifted = tuple((v - int(x[f])) % q for v, f in zip(a.values, flats_per_a[j]))
            targets[j] = full_index[(a.domain, shifted)]
        if not np.array_equal(ind_full[perm], ind_full[:, targets]):
            diff = np.nonzero(ind_full[perm] != ind_full[:, targets])
            c2_witness = {
                "translation": x.tolist(),
                "point": pts[diff[0][0]].tolist(),
                "assignment": _describe(full[diff[1][0]], r),
            }
            break
    checks["C2"] = CheckResult(
        passed=c2_witness is None,
        witness=c2_witness,
        detail={"translations_checked": num_pts},
    )

    # C3: divisibility of scaled means, with a full-size-domain witness for
    # minimality of the constant q**t.
    col_sums = ind_red.sum(axis=0)
    c3_witness = None
    for j, b in enumerate(reduced):
        expected = q ** (nr - len(b.domain))
        if int(col_sums[j]) != expected or (q**t * int(col_sums[j])) % num_pts != 0:
            c3_witness = {
                "assignment": _describe(b, r),
                "column_sum": int(col_sums[j]),
                "expected": expected,
            }
            break
    minimal_j = next(j for j, b in enumerate(reduced) if len(b.domain) == t)
    checks["C3"] = CheckResult(
        passed=c3_witness is None,
        witness=c3_witness,
        detail={
            "divisibility_constant": q**t,
            "minimality_witness": _describe(reduced[minimal_j], r),
            "witness_mean_denominator": q**t,
        },
    )

    # C4: sup norms of both families are exactly 1.
    c4_ok = (
        ind_full.min() >= 0 and ind_full.max() <= 1
        and ind_red.min() >= 0 and ind_red.max() <= 1
        and (ind_full.max(axis=0) == 1).all()
        and (ind_red.max(axis=0) == 1).all()
    )
    checks["C4"] = CheckResult(passed=bool(c4_ok), detail={"sup_norm": 1})

    # C5: biorthogonality of the dual family, with 1-norm bound 2**t.
    gram = dual.T @ ind_red
    identity = np.eye(len(reduced), dtype=np.int64)
    one_norms = np.abs(dual).sum(axis=0)
    norm_bad = next(
        (j for j, b in enumerate(reduced)
         if int(one_norms[j]) != 2 ** len(b.domain) or int(one_norms[j]) > 2**t),
        None,
    )
    c5_witness = None
    if not np.array_equal(gram, identity):
        i, j = np.argwhere(gram != identity)[0]
        c5_witness = {
            "dual_of": _describe(reduced[i], r),
            "against": _describe(reduced[j], r),
            "product": int(gram[i, j]),
        }
    elif norm_bad is not None:
        c5_witness = {
            "assignment": _describe(reduced[norm_bad], r),
            "one_norm": int(one_norms[norm_bad]),
        }
    checks["C5"] = CheckResult(
        passed=c5_witness is None,
        witness=c5_witness,
        detail={"m": 1, "decodability_bound": 2**t,
                "max_one_norm": int(one_norms.max())},
    )

    # lattice: dual combinations of the point rows yield every standard basis
    # vector, and the rows are integer vectors, so the spans coincide.
    lattice_witness = None
    for j in range(len(reduced)):
        vec = dual[:, j] @ ind_red
        target = identity[j]
        if not np.array_equal(vec, target):
            lattice_witness = {
                "assignment": _describe(reduced[j], r),
                "combination": vec.tolist(),
            }
            break
    checks["lattice"] = CheckResult(
        passed=lattice_witness is None,
        witness=lattice_witness,
        detail={"basis_vectors_hit": len(reduced)},
    )

    # spanning: the sentinel-elimination recursion plus the extension-sum
    # identity for every reduced assignment.
    rng = random.Random(seed)
    sentinel = q - 1
    domains = enumerate_domain_family(n, r, t)
    nonempty = [d for d in domains if d]
    span_witness = None

    def ind_col(domain: DomainSet, values: Sequence[int]) -> np.ndarray:
        col = np.ones(num_pts, dtype=bool)
        for c, v in zip(domain, values):
            col &= pts[:, _flat0(c, r)] == v
        return col.astype(np.int64)

    def recursion_holds(domain: DomainSet, values: tuple[int, ...]) -> bool:
        i0 = next(i for i, v in enumerate(values) if v == sentinel)
        rest_dom = domain[:i0] + domain[i0 + 1:]
        rest_vals = values[:i0] + values[i0 + 1:]
        rhs = ind_col(rest_dom, rest_vals)
        for k in range(q - 1):
            rhs = rhs - ind_col(domain, values[:i0] + (k,) + values[i0 + 1:])
        return np.array_equal(ind_col(domain, values), rhs)

    checked = 0
    total_maps = sum(q ** len(d) for d in domains)
    if total_maps <= 1000:
        for dom in domains:
            for vals in itertools.product(range(q), repeat=len(dom)):
                if sentinel in vals:
                    checked += 1
                    if not recursion_holds(dom, vals):
                        span_witness = {"columns": [c.flat(r) for c in dom],
                                        "values": list(vals)}
                        break
            if span_witness:
                break
    if span_witness is None and nonempty:
        for _ in range(spanning_samples):
            dom = nonempty[rng.randrange(len(nonempty))]
            vals = [rng.randrange(q) for _ in dom]
            vals[rng.randrange(len(dom))] = sentinel
            vals = tuple(vals)
            checked += 1
            if not recursion_holds(dom, vals):
                span_witness = {"columns": [c.flat(r) for c in dom],
                                "values": list(vals)}
                break

    if span_witness is None:
        shape_cols = [tuple(shape_to_columns(s, r)) for s in shapes]
        for j, b in enumerate(reduced):
            host = next(cols for cols in shape_cols if set(b.domain) <= set(cols))
            free = [c for c in host if c not in set(b.domain)]
            pinned = dict(b.items())
            total = np.zeros(num_pts, dtype=np.int64)
            for fill in itertools.product(range(q), repeat=len(free)):
                assignment = dict(pinned)
                assignment.update(zip(free, fill))
                vals = tuple(assignment[c] for c in host)
                total += ind_full[:, full_index[(host, vals)]]
            if not np.array_equal(total, ind_red[:, j]):
                span_witness = {"assignment": _describe(b, r),
                                "identity": "extension-sum"}
                break
    checks["spanning"] = CheckResult(
        passed=span_witness is None,
        witness=span_witness,
        detail={"recursion_cases_checked": checked,
                "extension_sums_checked": len(reduced)},
    )

    constants = {
        "c1": q**t,
        "c2": 1,
        "c3": 2 ** (t + 1) * len(full),
        "decodability_bound": 2**t,
        "m": 1,
        "basis_size": len(reduced),
        "num_full_assignments": len(full),
        "num_shapes": len(shapes),
        "num_points": num_pts,
    }
    return CertReport(q=q, n=n, r=r, t=t, checks=checks, constants=constants)
