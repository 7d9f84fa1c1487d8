"""Exact and parametric size bounds, plus net parameter translation.

Lower bounds (the classical Rao sum and the trivial q**t) are exact big
integers. The two upper-bound formulas depend on universal constants that are
not pinned down anywhere; they are required parameters here (default 1) and
every report carries that caveat. The size threshold for the certified
existence result uses a rigorous rational upper bound on the natural log so
the threshold is never under-reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import count_shapes
from .errors import InvalidParams, NotInvertible
from .klp import count_reduced_assignments


@dataclass(frozen=True)
class DimsRecord:
    """Exact cardinalities and framework constants for one parameter set."""

    num_points: int               # q**(n*r)
    num_shapes: int               # capped compositions of t
    num_full_assignments: int     # q**t per shape
    num_reduced_assignments: int  # basis size
    basis_size: int               # equals num_reduced_assignments
    c1: int                       # divisibility constant q**t
    c2: int                       # sup-norm bound of the spanning family
    c3: int                       # 2**(t+1) * num_full_assignments


@dataclass
class BoundReport:
    q: int
    n: int
    r: int
    t: int
    lower_trivial: int
    lower_rao: int | None
    lower_best: int
    upper_c: Fraction
    upper_value: int
    klp_C: Fraction
    klp_raw_threshold: int
    klp_threshold: int | None
    dims: DimsRecord
    caveats: list[str]


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


def rao_bound_oa(q: int, n: int, t: int) -> int:
    """Classical lower bound on the size of a strength-t array on n columns.

    For t = 2u it is sum_{i<=u} C(n,i)(q-1)**i; odd strengths add the
    correction term C(n-1,u)(q-1)**(u+1). Exact big-integer arithmetic.
    """
    if q < 2 or n < 1 or t < 0 or t > n:
        raise InvalidParams("need q >= 2 and 0 <= t <= n")
    u = t // 2
    total = sum(math.comb(n, i) * (q - 1) ** i for i in range(u + 1))
    if t % 2 == 1:
        total += math.comb(n - 1, u) * (q - 1) ** (u + 1)
    return total


def ooa_lower_bound(q: int, n: int, r: int, t: int) -> int:
    """Best exact lower bound: the Rao value on n columns (valid because
    dropping to the first column of each block preserves strength) against
    the trivial q**t. The Rao component applies only when t <= n."""
    if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    lower = q**t
    if t <= n:
        lower = max(lower, rao_bound_oa(q, n, t))
    return lower


def existence_upper_bound(q: int, n: int, r: int, t: int, c) -> int:
    """Parametric upper bound (c*q*(n+t)/t) ** (c*t) with conservative
    rounding: the exponent c*t is rounded up to an integer, the base is kept
    as an exact rational, and the final value is rounded up."""
    c = _as_fraction(c)
    if c <= 0:
        raise InvalidParams("constant c must be positive")
    if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    base = c * q * (n + t) / t
    exponent = math.ceil(c * t)
    return max(1, math.ceil(base**exponent))


# Rational upper bound on ln via 2*atanh((u-1)/(u+1)) with an explicit tail
# bound; all arithmetic is exact, so the result is rigorously >= ln.

def _atanh_ln_upper(u: Fraction, terms: int = 12) -> Fraction:
    y = (u - 1) / (u + 1)
    if y == 0:
        return Fraction(0)
    total = Fraction(0)
    ypow = y
    y2 = y * y
    for i in range(terms):
        total += ypow / (2 * i + 1)
        ypow *= y2
    tail = ypow / ((2 * terms + 1) * (1 - y2))
    return 2 * (total + tail)


_LN2_UPPER = _atanh_ln_upper(Fraction(2))


def ln_upper(m: int) -> Fraction:
    """Rational upper bound on ln(m) for integers m >= 1."""
    if m < 1:
        raise InvalidParams("ln_upper needs m >= 1")
    if m == 1:
        return Fraction(0)
    s = m.bit_length() - 1
    u = Fraction(m, 2**s)
    return s * _LN2_UPPER + _atanh_ln_upper(u)


def _klp_threshold_parts(q: int, n: int, r: int, t: int, C) -> tuple[Fraction, int | None, int]:
    C = _as_fraction(C)
    if C <= 0:
        raise InvalidParams("constant C must be positive")
    rec = dims(q, n, r, t)
    arg = 2 * rec.c3 * rec.basis_size
    threshold = C * rec.c2 * rec.c3**2 * rec.basis_size**6 * ln_upper(arg) ** 6
    first = rec.c1 * max(1, math.ceil(threshold / rec.c1))
    feasible = first <= rec.num_points and Fraction(rec.num_points - first) >= threshold
    return threshold, (first if feasible else None), rec.num_points


def klp_threshold(q: int, n: int, r: int, t: int, C) -> int | None:
    """Smallest positive multiple N of q**t with min(N, |X|-N) at or above the
    certified-existence threshold, or None when no such N fits below the full
    point count."""
    _, result, _ = _klp_threshold_parts(q, n, r, t, C)
    return result


def dims(q: int, n: int, r: int, t: int) -> DimsRecord:
    """Exact cardinalities of the certification-framework families."""
    if q < 2 or n < 1 or r < 1 or not 1 <= t <= n * r:
        raise InvalidParams("invalid parameter ranges")
    num_shapes = count_shapes(n, r, t)
    num_full = q**t * num_shapes
    num_reduced = count_reduced_assignments(q, n, r, t)
    return DimsRecord(
        num_points=q ** (n * r),
        num_shapes=num_shapes,
        num_full_assignments=num_full,
        num_reduced_assignments=num_reduced,
        basis_size=num_reduced,
        c1=q**t,
        c2=1,
        c3=2 ** (t + 1) * num_full,
    )


def bound_report(q: int, n: int, r: int, t: int, c=1, C=1) -> BoundReport:
    """Assemble lower bounds, both parametric upper bounds, and the dimension
    ledger for one parameter set."""
    c = _as_fraction(c)
    C = _as_fraction(C)
    caveats = [
        "upper bounds are parametric: the constants c and C are user-supplied, not derived",
    ]
    rao = rao_bound_oa(q, n, t) if t <= n else None
    if rao is None:
        caveats.append(f"Rao component skipped: t = {t} exceeds the n = {n} depth-1 columns")
    threshold, first, _ = _klp_threshold_parts(q, n, r, t, C)
    return BoundReport(
        q=q, n=n, r=r, t=t,
        lower_trivial=q**t,
        lower_rao=rao,
        lower_best=ooa_lower_bound(q, n, r, t),
        upper_c=c,
        upper_value=existence_upper_bound(q, n, r, t, c),
        klp_C=C,
        klp_raw_threshold=math.ceil(threshold),
        klp_threshold=first,
        dims=dims(q, n, r, t),
        caveats=caveats,
    )


class OoaParamsTuple(NamedTuple):
    strength: int
    blocks: int
    depth: int
    lam: int
    size: int
    base: int


class NetParamsTuple(NamedTuple):
    t: int
    m: int
    s: int
    base: int


def net_to_ooa_params(t: int, m: int, s: int, q: int) -> OoaParamsTuple:
    """Parameters of the ordered array equivalent to a (t, m, s)-net in base q."""
    if q < 2 or s < 1 or not 0 <= t <= m:
        raise InvalidParams("need q >= 2, s >= 1, 0 <= t <= m")
    return OoaParamsTuple(
        strength=m - t, blocks=s, depth=m - t, lam=q**t, size=q**m, base=q,
    )


def ooa_to_net_params(q: int, n: int, r: int, t: int, lam: int) -> NetParamsTuple:
    """Invert the net equivalence. Requires depth equal to strength and a
    multiplicity that is a power of q; raises NotInvertible otherwise."""
    if q < 2 or n < 1 or r < 1 or t < 1 or lam < 1:
        raise InvalidParams("invalid parameter ranges")
    if r != t:
        raise NotInvertible(f"depth r = {r} must equal strength t = {t}")
    x, j = lam, 0
    while x % q == 0:
        x //= q
        j += 1
    if x != 1:
        raise NotInvertible(f"multiplicity {lam} is not a power of {q}")
    return NetParamsTuple(t=j, m=j + t, s=n, base=q)


def net_ooa_params(direction: str, **kwargs):
    """Dispatch the net parameter translation by direction."""
    if direction == "net_to_ooa":
        return net_to_ooa_params(**kwargs)
    if direction == "ooa_to_net":
        return ooa_to_net_params(**kwargs)
    raise InvalidParams(f"unknown direction {direction!r}")
