import itertools
import math
import random

import numpy as np
import pytest

from oracles import fraction_rank

from ooakit import (
    ColumnIndex,
    PartialAssignment,
    SymbolArray,
    certify,
    count_reduced_assignments,
    dims,
    dual_matrix,
    dual_value,
    enumerate_domain_family,
    enumerate_full_assignments,
    enumerate_reduced_assignments,
    indicator_matrix,
    indicator_value,
    integer_rank,
    precedes,
    sentinel_extension,
    verify_ooa,
)
from ooakit.errors import ScaleExceeded

# every (q, n, r, t) the certification must fully pass on
CERT_GRID = [
    (q, n, r, t)
    for q in (2, 3)
    for n in (1, 2)
    for r in (1, 2)
    for t in range(1, min(3, n * r) + 1)
]


def _col(block, depth):
    return ColumnIndex(block, depth)


def test_domain_family_2222():
    fam = enumerate_domain_family(2, 2, 2)
    expected = {
        (),
        (_col(1, 1),),
        (_col(1, 2),),
        (_col(1, 1), _col(1, 2)),
        (_col(2, 1),),
        (_col(2, 2),),
        (_col(2, 1), _col(2, 2)),
        (_col(1, 1), _col(2, 1)),
    }
    assert set(fam) == expected
    assert len(fam) == 8


def test_domain_family_minimal_cases():
    assert enumerate_domain_family(1, 1, 1) == [(), (_col(1, 1),)]
    fam = enumerate_domain_family(2, 1, 2)
    assert set(fam) == {
        (), (_col(1, 1),), (_col(2, 1),), (_col(1, 1), _col(2, 1)),
    }


def test_domain_family_members_are_subprefix_sets():
    for (q, n, r, t) in CERT_GRID:
        for dom in enumerate_domain_family(n, r, t):
            deepest = {}
            for c in dom:
                deepest[c.block] = max(deepest.get(c.block, 0), c.depth)
            assert sum(deepest.values()) <= t


def test_domain_family_scale_cap():
    with pytest.raises(ScaleExceeded):
        enumerate_domain_family(7, 2, 3)


def test_reduced_assignments_counts():
    assert len(enumerate_reduced_assignments(2, 2, 2, 2)) == 8
    three = enumerate_reduced_assignments(3, 1, 1, 1)
    assert len(three) == 3
    assert {a.values for a in three} == {(), (0,), (1,)}
    # binary alphabets have a single reduced symbol
    for (q, n, r, t) in CERT_GRID:
        if q == 2:
            assert len(enumerate_reduced_assignments(q, n, r, t)) == len(
                enumerate_domain_family(n, r, t)
            )


def test_reduced_count_closed_form_matches_enumeration():
    for q in (2, 3, 4):
        for n in (1, 2, 3):
            for r in (1, 2):
                for t in range(1, min(n * r, 4) + 1):
                    assert count_reduced_assignments(q, n, r, t) == len(
                        enumerate_reduced_assignments(q, n, r, t)
                    )


def test_reduced_count_example():
    assert count_reduced_assignments(3, 2, 1, 2) == 9  # 1 + 2 + 2 + 4


def test_indicator_value_examples(example_2222):
    row2 = tuple(example_2222.rows[1])  # 0 1 1 1
    empty = PartialAssignment((), ())
    assert indicator_value(empty, row2, 2) == 1
    a = PartialAssignment((_col(1, 1), _col(1, 2)), (0, 1), "full")
    assert indicator_value(a, row2, 2) == 1
    b = PartialAssignment((_col(1, 1),), (1,))
    assert indicator_value(b, row2, 2) == 0


def test_precedes():
    empty = PartialAssignment((), ())
    b = PartialAssignment((_col(1, 1), _col(2, 1)), (0, 0))
    assert precedes(empty, b)
    assert precedes(PartialAssignment((_col(1, 1),), (0,)), b)
    assert not precedes(PartialAssignment((_col(1, 1),), (1,)), b)


def test_sentinel_extension():
    empty = PartialAssignment((), ())
    assert sentinel_extension(empty, 2, 2, 2) == (1, 1, 1, 1)
    b = PartialAssignment((_col(1, 1),), (0,))
    assert sentinel_extension(b, 2, 2, 2) == (0, 1, 1, 1)
    full = PartialAssignment((_col(1, 1), _col(2, 1)), (0, 0))
    assert sentinel_extension(full, 3, 2, 1) == (0, 0)


def test_dual_value_examples():
    empty = PartialAssignment((), ())
    assert dual_value(empty, (1, 1, 1, 1), 2, 2) == 1
    assert dual_value(empty, (0, 1, 1, 1), 2, 2) == 0
    b = PartialAssignment((_col(1, 1),), (0,))
    assert dual_value(b, (0, 1, 1, 1), 2, 2) == 1
    assert dual_value(b, (1, 1, 1, 1), 2, 2) == -1
    assert dual_value(b, (0, 0, 1, 1), 2, 2) == 0


def test_dual_one_norm_is_two_to_domain_size():
    for (q, n, r, t) in CERT_GRID:
        mat = dual_matrix(q, n, r, t)
        for j, b in enumerate(enumerate_reduced_assignments(q, n, r, t)):
            assert int(np.abs(mat[:, j]).sum()) == 2 ** len(b.domain)


def test_indicator_matrix_small():
    mat = indicator_matrix(2, 1, 1, 1)
    assert mat.tolist() == [[1, 1], [1, 0]]


def test_indicator_matrix_empty_domain_column_is_ones():
    for (q, n, r, t) in CERT_GRID:
        basis = enumerate_reduced_assignments(q, n, r, t)
        mat = indicator_matrix(q, n, r, t)
        j = next(i for i, b in enumerate(basis) if not b.domain)
        assert (mat[:, j] == 1).all()


def test_indicator_matrix_rank_2222():
    mat = indicator_matrix(2, 2, 2, 2)
    assert mat.shape == (16, 8)
    assert integer_rank(mat) == 8


def test_integer_rank_against_fraction_oracle():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randrange(1, 6)
        n = rng.randrange(1, 6)
        mat = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(m)]
        assert integer_rank(mat) == fraction_rank(mat)


def test_biorthogonality_grid():
    for (q, n, r, t) in CERT_GRID:
        ind = indicator_matrix(q, n, r, t)
        dual = dual_matrix(q, n, r, t)
        size = ind.shape[1]
        assert np.array_equal(dual.T @ ind, np.eye(size, dtype=np.int64))
        assert integer_rank(ind) == size


def test_constant_row_sums():
    for (q, n, r, t) in CERT_GRID:
        pts = list(itertools.product(range(q), repeat=n * r))
        full = enumerate_full_assignments(q, n, r, t)
        shapes = dims(q, n, r, t).num_shapes
        for x in pts:
            assert sum(indicator_value(a, x, r) for a in full) == shapes


def test_column_sums_divisibility():
    for (q, n, r, t) in CERT_GRID:
        nr = n * r
        mat = indicator_matrix(q, n, r, t)
        basis = enumerate_reduced_assignments(q, n, r, t)
        sums = mat.sum(axis=0)
        for j, b in enumerate(basis):
            assert int(sums[j]) == q ** (nr - len(b.domain))
            assert (q**t * int(sums[j])) % q**nr == 0


def test_alternating_binomial_sums():
    for d in range(13):
        total = sum((-1) ** k * math.comb(d, k) for k in range(d + 1))
        assert total == (1 if d == 0 else 0)


def test_certify_all_pass_examples():
    for (q, n, r, t) in [(2, 2, 2, 2), (3, 2, 1, 2), (2, 1, 1, 1)]:
        report = certify(q, n, r, t)
        assert report.passed, (q, n, r, t)
        assert set(report.checks) == {"C1", "C2", "C3", "C4", "C5", "lattice", "spanning"}


def test_certify_constants_2222():
    report = certify(2, 2, 2, 2)
    assert report.constants["c1"] == 4
    assert report.constants["c2"] == 1
    assert report.constants["c3"] == 96
    assert report.constants["decodability_bound"] == 4
    assert report.constants["m"] == 1
    assert report.constants["basis_size"] == 8
    assert report.checks["C5"].detail["max_one_norm"] == 4


def test_certify_scale_cap():
    with pytest.raises(ScaleExceeded):
        certify(2, 2, 2, 2, scale_cap=8)


def test_certify_full_grid():
    for (q, n, r, t) in CERT_GRID:
        report = certify(q, n, r, t)
        assert report.passed, (q, n, r, t)


def test_membership_mean_criterion(example_2222):
    # an array passes the verifier exactly when every full-assignment
    # indicator averages to q**-t over its rows
    rng = random.Random(5)
    q, n, r, t = 2, 2, 2, 2
    full = enumerate_full_assignments(q, n, r, t)

    def mean_criterion(rows):
        m = len(rows)
        return all(
            sum(indicator_value(a, x, r) for x in rows) * q**t == m for a in full
        )

    assert mean_criterion(example_2222.row_tuples())
    agree = 0
    for _ in range(40):
        rows = [tuple(rng.randrange(q) for _ in range(n * r)) for _ in range(4)]
        arr = SymbolArray(q, n, r, np.array(rows))
        lhs = verify_ooa(arr, t=t).passed
        rhs = mean_criterion(rows)
        assert lhs == rhs
        agree += lhs
    assert agree < 40  # random arrays are usually not balanced
