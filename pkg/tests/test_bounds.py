import math
from fractions import Fraction

import pytest

from ooakit import (
    bound_report,
    dims,
    existence_upper_bound,
    klp_threshold,
    net_ooa_params,
    net_to_ooa_params,
    ooa_lower_bound,
    ooa_to_net_params,
    rao_bound_oa,
)
from ooakit.bounds import _klp_threshold_parts, ln_upper
from ooakit.errors import InvalidParams, NotInvertible


def test_rao_examples():
    assert rao_bound_oa(2, 4, 2) == 5
    assert rao_bound_oa(2, 4, 3) == 8
    assert rao_bound_oa(3, 7, 0) == 1


def test_rao_strength_one_is_q():
    for q in (2, 3, 5, 8):
        for n in (1, 2, 5, 9):
            assert rao_bound_oa(q, n, 1) == q


def test_rao_validation():
    with pytest.raises(InvalidParams):
        rao_bound_oa(2, 3, 4)  # t > n
    with pytest.raises(InvalidParams):
        rao_bound_oa(1, 3, 2)


def test_rao_monotone_in_columns():
    for q in (2, 3):
        for n in (2, 3, 4):
            for r in (2, 3):
                for t in range(1, n + 1):
                    assert rao_bound_oa(q, n, t) <= rao_bound_oa(q, n * r, t)


def test_ooa_lower_bound_examples():
    assert ooa_lower_bound(2, 2, 2, 2) == 4   # trivial 4 beats Rao 3
    assert ooa_lower_bound(2, 4, 1, 2) == 5   # Rao 5 beats trivial 4
    assert ooa_lower_bound(3, 1, 1, 1) == 3


def test_ooa_lower_bound_skips_rao_when_t_exceeds_n():
    assert ooa_lower_bound(2, 1, 4, 3) == 8  # only the trivial bound applies


def test_existence_upper_bound_examples():
    assert existence_upper_bound(2, 2, 2, 2, 1) == 16
    assert existence_upper_bound(2, 2, 2, 2, 2) == 4096
    assert existence_upper_bound(2, 2, 2, 2, Fraction(1, 10**9)) == 1


def test_existence_upper_bound_rational_exponent_rounding():
    # base = (3/4) * 2 * 4 / 2 = 3; exponent ceil(3/2) = 2
    assert existence_upper_bound(2, 2, 2, 2, Fraction(3, 4)) == 9


def test_ln_upper_is_tight_upper_bound():
    for m in [2, 3, 10, 1536, 10**6, 12345678901]:
        up = ln_upper(m)
        assert float(up) >= math.log(m)
        assert float(up) <= math.log(m) * (1 + 1e-9) + 1e-12


def test_klp_threshold_none_at_small_scale():
    assert klp_threshold(2, 2, 2, 2, 1) is None
    assert klp_threshold(2, 4, 2, 2, 1) is None


def test_klp_threshold_raw_value_matches_formula():
    threshold, result, num_points = _klp_threshold_parts(2, 2, 2, 2, 1)
    assert result is None and num_points == 16
    expected = 96**2 * 8**6 * math.log(2 * 96 * 8) ** 6
    assert expected * (1 - 1e-9) <= float(threshold) <= expected * (1 + 1e-6)


def test_klp_threshold_tiny_constant_hits_first_multiple():
    # threshold below q**t: the smallest positive multiple of q**t qualifies
    value = klp_threshold(2, 4, 2, 2, Fraction(1, 10**18))
    assert value == 4


def test_klp_threshold_result_properties():
    C = Fraction(1, 10**15)
    for (q, n, r, t) in [(2, 4, 2, 2), (2, 3, 2, 2), (3, 2, 2, 2)]:
        threshold, value, num_points = _klp_threshold_parts(q, n, r, t, C)
        if value is None:
            continue
        c1 = q**t
        assert value % c1 == 0
        assert Fraction(value) >= threshold
        assert Fraction(num_points - value) >= threshold
        prev = value - c1
        assert prev <= 0 or Fraction(prev) < threshold


def test_dims_golden():
    d = dims(2, 2, 2, 2)
    assert d.num_points == 16
    assert d.num_shapes == 3
    assert d.num_full_assignments == 12
    assert d.num_reduced_assignments == 8
    assert d.basis_size == 8
    assert (d.c1, d.c2, d.c3) == (4, 1, 96)


def test_dims_small_cases():
    d = dims(2, 2, 1, 2)
    assert d.num_shapes == 1 and d.num_full_assignments == 4
    for q in (2, 3, 5):
        d = dims(q, 1, 1, 1)
        assert d.num_shapes == 1
        assert d.num_full_assignments == q
        assert d.c1 == q


def test_dims_structural_relations():
    for (q, n, r, t) in [(2, 2, 2, 2), (3, 2, 2, 3), (2, 3, 2, 4), (3, 3, 1, 2)]:
        d = dims(q, n, r, t)
        assert d.num_full_assignments == d.c1 * d.num_shapes
        assert d.num_reduced_assignments <= d.num_full_assignments
        assert d.c3 == 2 ** (t + 1) * d.num_full_assignments
        if r >= t and n >= 1:
            assert d.num_shapes == math.comb(n + t - 1, t)


def test_bound_report_carries_caveat():
    rep = bound_report(2, 2, 2, 2)
    assert rep.lower_best == 4
    assert rep.klp_threshold is None
    assert rep.klp_raw_threshold > rep.dims.num_points
    assert any("user-supplied" in c for c in rep.caveats)
    rep = bound_report(2, 1, 4, 3)
    assert rep.lower_rao is None
    assert any("Rao" in c for c in rep.caveats)


def test_net_to_ooa_examples():
    p = net_to_ooa_params(t=0, m=2, s=2, q=2)
    assert (p.strength, p.blocks, p.depth, p.lam, p.size) == (2, 2, 2, 1, 4)
    degenerate = net_to_ooa_params(t=3, m=3, s=5, q=2)
    assert degenerate.strength == 0 and degenerate.lam == 8 == degenerate.size


def test_ooa_to_net_inverts_consistent_parameters():
    p = ooa_to_net_params(q=2, n=5, r=3, t=3, lam=2)
    assert (p.t, p.m, p.s, p.base) == (1, 4, 5, 2)


def test_ooa_to_net_rejects_outside_image():
    with pytest.raises(NotInvertible):
        ooa_to_net_params(q=2, n=5, r=2, t=3, lam=2)  # depth != strength
    with pytest.raises(NotInvertible):
        ooa_to_net_params(q=2, n=5, r=3, t=3, lam=3)  # lam not a power of q


def test_net_roundtrip():
    for (t, m, s, q) in [(0, 2, 2, 2), (1, 4, 5, 2), (2, 5, 3, 3)]:
        p = net_to_ooa_params(t=t, m=m, s=s, q=q)
        if p.strength < 1:
            continue
        back = ooa_to_net_params(q=q, n=p.blocks, r=p.depth, t=p.strength, lam=p.lam)
        assert (back.t, back.m, back.s, back.base) == (t, m, s, q)


def test_net_dispatcher():
    p = net_ooa_params("net_to_ooa", t=0, m=2, s=2, q=2)
    assert p.strength == 2
    with pytest.raises(InvalidParams):
        net_ooa_params("sideways", t=0, m=2, s=2, q=2)
