"""Exact arithmetic in prime-power finite fields.

Provides the polynomial evaluation and Taylor shifts used by the
derivative-evaluation construction. Elements are canonical coefficient tuples
over the prime subfield (lowest degree first), so equality and hashing are
structural and elements can serve as census keys. The element whose canonical
enumeration index is i has the base-p digits of i as coefficients, so index 0
is zero and index 1 is one.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import (
    InvalidParams,
    MissingModulus,
    NotPrime,
    ReducibleModulus,
    ZeroInverse,
)

FieldElement = tuple[int, ...]
Polynomial = tuple[FieldElement, ...]

# Monic irreducible moduli shipped for the small extension fields, as
# coefficient lists, lowest degree first.
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),       # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),    # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),       # x^2 + 1 over GF(3)
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_divisors(k: int) -> list[int]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


# Polynomial helpers over GF(p) on plain int coefficient lists, lowest degree
# first. Used only for modulus validation; field arithmetic lives on FieldSpec.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    # m must be monic
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) > dm:
        coef = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _trim(a)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, monic, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin test: f of degree k is irreducible over GF(p) iff x**(p**k) = x
    (mod f) and x**(p**(k/ell)) - x is coprime to f for every prime ell | k."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    frob = {0: x}
    cur = x
    for d in range(1, k + 1):
        cur = _ppowmod(cur, p, modulus, p)
        frob[d] = cur
    if _psub(frob[k], x, p):
        return False
    for ell in _prime_divisors(k):
        diff = _psub(frob[k // ell], x, p)
        g = _pgcd(diff, modulus, p)
        if len(g) != 1:
            return False
    return True


class FieldSpec:
    """A concrete field GF(p**k) with a verified irreducible modulus."""

    def __init__(self, p: int, k: int = 1, modulus: Iterable[int] | None = None):
        if not isinstance(k, int) or k < 1:
            raise InvalidParams("extension degree k must be a positive integer")
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            if modulus is not None:
                raise InvalidParams("prime fields take no modulus")
            self.modulus: tuple[int, ...] | None = None
        else:
            if modulus is None:
                if self.q in BUILTIN_MODULI:
                    modulus = BUILTIN_MODULI[self.q]
                else:
                    raise MissingModulus(
                        f"no built-in modulus for q={self.q}; supply coefficients"
                    )
            mod = [int(c) % p for c in modulus]
            if len(mod) != k + 1 or mod[-1] != 1:
                raise InvalidParams("modulus must be monic of degree k")
            if not _is_irreducible(mod, p):
                raise ReducibleModulus(
                    f"modulus {mod} factors over GF({p})"
                )
            self.modulus = tuple(mod)
        self._add_table: np.ndarray | None = None
        self._mul_table: np.ndarray | None = None

    def __repr__(self) -> str:
        if self.k == 1:
            return f"FieldSpec(GF({self.p}))"
        return f"FieldSpec(GF({self.p}^{self.k}), modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # canonical enumeration --------------------------------------------------

    def element(self, value) -> FieldElement:
        """Coerce an enumeration index or coefficient iterable to an element."""
        if isinstance(value, tuple) and len(value) == self.k:
            if all(isinstance(c, int) and 0 <= c < self.p for c in value):
                return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise InvalidParams(f"index {v} outside 0..{self.q - 1}")
            digits = []
            for _ in range(self.k):
                v, d = divmod(v, self.p)
                digits.append(d)
            return tuple(digits)
        coeffs = [int(c) for c in value]
        if len(coeffs) > self.k:
            raise InvalidParams("coefficient vector longer than extension degree")
        if any(not 0 <= c < self.p for c in coeffs):
            raise InvalidParams("coefficients must lie in 0..p-1")
        return tuple(coeffs) + (0,) * (self.k - len(coeffs))

    def index(self, a: FieldElement) -> int:
        """Canonical enumeration index (base-p value of the coefficients)."""
        a = self.element(a)
        v = 0
        for c in reversed(a):
            v = v * self.p + c
        return v

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return (0,) * self.k

    @property
    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.k - 1)

    # arithmetic -------------------------------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: FieldElement) -> FieldElement:
        return tuple((-x) % self.p for x in a)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _pmod(_pmul(list(a), list(b), self.p), list(self.modulus), self.p)
        return tuple(prod) + (0,) * (self.k - len(prod))

    def inv(self, a: FieldElement) -> FieldElement:
        a = self.element(a)
        if a == self.zero:
            raise ZeroInverse("zero has no multiplicative inverse")
        return self.power(a, self.q - 2)

    def power(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            raise InvalidParams("exponent must be nonnegative")
        result = self.one
        base = self.element(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def eval_poly(self, poly: Polynomial, a: FieldElement) -> FieldElement:
        a = self.element(a)
        acc = self.zero
        for c in reversed(poly):
            acc = self.add(self.mul(acc, a), self.element(c))
        return acc

    def poly(self, coeffs: Iterable) -> Polynomial:
        """Build a polynomial from enumeration indices or coefficient vectors."""
        return tuple(self.element(c) for c in coeffs)

    # index tables (used to vectorize row generation) ------------------------

    def add_index_table(self) -> np.ndarray:
        if self._add_table is None:
            els = self.elements()
            tab = np.empty((self.q, self.q), dtype=np.int64)
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    tab[i, j] = self.index(self.add(a, b))
            self._add_table = tab
        return self._add_table

    def mul_index_table(self) -> np.ndarray:
        if self._mul_table is None:
            els = self.elements()
            tab = np.empty((self.q, self.q), dtype=np.int64)
            for i, a in enumerate(els):
                for j, b in enumerate(els):
                    tab[i, j] = self.index(self.mul(a, b))
            self._mul_table = tab
        return self._mul_table


def field_make(p: int, k: int = 1, modulus: Iterable[int] | None = None) -> FieldSpec:
    """Construct GF(p**k), validating primality and the modulus."""
    return FieldSpec(p, k, modulus)


def field_op(field: FieldSpec, op: str, a, b=None) -> FieldElement:
    """Dispatch one exact field operation: add, mul, inv, or neg."""
    a = field.element(a)
    if op in ("add", "mul"):
        if b is None:
            raise InvalidParams(f"{op} needs two operands")
        b = field.element(b)
        return field.add(a, b) if op == "add" else field.mul(a, b)
    if b is not None:
        raise InvalidParams(f"{op} takes a single operand")
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise InvalidParams(f"unknown field op {op!r}")


def taylor_shift(field: FieldSpec, poly, a) -> Polynomial:
    """Re-center poly at a: coefficient j of the result is the j-th Hasse
    derivative of poly at a, i.e. the coefficient of z**j in poly(a + z).

    Computed by repeated synthetic division, which stays exact in any
    characteristic. The coefficient count is preserved.
    """
    a = field.element(a)
    cur = [field.element(c) for c in poly]
    out = []
    while cur:
        acc = field.zero
        stack = []
        for c in reversed(cur):
            acc = field.add(field.mul(acc, a), c)
            stack.append(acc)
        out.append(stack.pop())
        cur = list(reversed(stack))
    return tuple(out)
