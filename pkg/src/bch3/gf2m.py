"""Arithmetic in binary extension fields F_{2^m}.

Field elements are plain Python ints: bit j is the coefficient of x^j in
the polynomial-basis representative, so 0 and 1 are the field's zero and
one.  All operations are methods of a FieldSpec carrying the degree and
the irreducible modulus; elements of different fields are only kept apart
by passing the right FieldSpec, which is how the bulk numpy kernels can
share the same integer encoding.

Hex strings ("0x25" for x^5 + x^2 + 1) are the external encoding of both
elements and moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np


def poly_degree(p: int) -> int:
    """Degree of a polynomial over F_2 encoded as an int (deg(0) = -1)."""
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b, both polynomials over F_2, b != 0."""
    db = poly_degree(b)
    while True:
        da = poly_degree(a)
        if da < db:
            return a
        a ^= b << (da - db)


def is_irreducible(p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(p)/2.

    Slow but auditable; instant for the degrees this package supports.
    """
    m = poly_degree(p)
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if poly_mod(p, q) == 0:
                return False
    return True


def find_default_modulus(m: int) -> int:
    """Smallest integer encoding of a monic irreducible of degree m."""
    if m < 2:
        raise ValueError(f"extension degree must be >= 2, got {m}")
    for p in range(1 << m, 1 << (m + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """A concrete F_{2^m}: degree, modulus, and the precomputed trace mask.

    trace_mask bit j holds trace(x^j), so the absolute trace of any
    element a is the parity of popcount(a & trace_mask).
    """

    m: int
    modulus: int
    q: int = dc_field(init=False)
    trace_mask: int = dc_field(init=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"extension degree must be >= 2, got {self.m}")
        if poly_degree(self.modulus) != self.m:
            raise ValueError(
                f"modulus 0x{self.modulus:x} has degree {poly_degree(self.modulus)}, expected {self.m}"
            )
        if not self.modulus & 1:
            raise ValueError(f"modulus 0x{self.modulus:x} has zero constant term")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus 0x{self.modulus:x} is reducible")
        object.__setattr__(self, "q", 1 << self.m)
        mask = 0
        for j in range(self.m):
            t = self._trace_by_definition(1 << j)
            mask |= t << j
        object.__setattr__(self, "trace_mask", mask)

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"0x{a:x} is not an element of F_2^{self.m}")
        return a

    def add(self, a: int, b: int) -> int:
        """Sum of two elements (coefficientwise xor)."""
        self._check(a)
        self._check(b)
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Product modulo the field modulus."""
        self._check(a)
        self._check(b)
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & self.q:
                a ^= self.modulus
        return r

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, k: int) -> int:
        """Raise a to a nonnegative integer power by square-and-multiply."""
        self._check(a)
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            k >>= 1
            a = self.mul(a, a)
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse; inverting zero is a domain error."""
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def trace(self, a: int) -> int:
        """Absolute trace F_{2^m} -> F_2, as the parity of a masked popcount."""
        self._check(a)
        return (a & self.trace_mask).bit_count() & 1

    def _trace_by_definition(self, a: int) -> int:
        # a + a^2 + ... + a^(2^(m-1)), evaluated in the field.
        acc = a
        s = a
        for _ in range(self.m - 1):
            s = self.mul(s, s)
            acc ^= s
        if acc not in (0, 1):
            raise AssertionError("trace left the prime field; modulus is broken")
        return acc

    def artin_schreier_solve(self, c: int):
        """Least y with y^2 + y = c, or None when no solution exists.

        Solvable exactly when trace(c) = 0; the two solutions then differ
        by 1.  Odd m uses the closed-form half trace, even m falls back to
        a scan (even degrees sit outside this package's hot paths).
        """
        self._check(c)
        if self.trace(c):
            return None
        if self.m & 1:
            # Half trace: y = c + c^4 + c^16 + ... + c^(2^(m-1)).
            y = c
            s = c
            for _ in range((self.m - 1) // 2):
                s = self.square(self.square(s))
                y ^= s
        else:
            y = next(y for y in range(self.q) if self.mul(y, y) ^ y == c)
        return min(y, y ^ 1)


def make_field(m: int, modulus: int | None = None) -> FieldSpec:
    """Validated FieldSpec; picks the default modulus when none is given."""
    if modulus is None:
        modulus = find_default_modulus(m)
    return FieldSpec(m, modulus)


def isqrt_floor(n: int) -> int:
    """Largest r with r*r <= n; the square-bracket operator of the bounds."""
    if n < 0:
        raise ValueError("isqrt_floor of a negative number")
    return math.isqrt(n)


@lru_cache(maxsize=None)
def inverse_table(field: FieldSpec) -> np.ndarray:
    """inv_table[x] = x^-1 for x in F_q^*, with inv_table[0] = 0 as filler.

    Built with one field inversion and 3(q-2) multiplications (running
    prefix products), which keeps the per-field setup cheap at m = 13.
    """
    q = field.q
    xs = list(range(1, q))
    prefix = [0] * len(xs)
    acc = 1
    for i, x in enumerate(xs):
        acc = field.mul(acc, x)
        prefix[i] = acc
    out = np.zeros(q, dtype=np.int64)
    acc = field.inv(prefix[-1])
    for i in range(len(xs) - 1, 0, -1):
        out[xs[i]] = field.mul(acc, prefix[i - 1])
        acc = field.mul(acc, xs[i])
    out[1] = 1
    return out


@lru_cache(maxsize=None)
def trace_mul_table(field: FieldSpec) -> np.ndarray:
    """T with trace(a*u) = parity(a & T[u]) for all elements a, u.

    Bit j of T[u] is trace(x^j * u); linearity in u lets the whole table
    be filled by xor-ing basis masks over subsets.
    """
    m, q = field.m, field.q
    powers = [1]
    for _ in range(2 * m - 2):
        powers.append(field.mul(powers[-1], 2))
    trs = [field.trace(p) for p in powers]
    table = np.zeros(q, dtype=np.int64)
    for k in range(m):
        basis_mask = 0
        for j in range(m):
            basis_mask |= trs[j + k] << j
        table[1 << k : 2 << k] = table[0 : 1 << k] ^ basis_mask
    return table


def parity(values: np.ndarray) -> np.ndarray:
    """Elementwise popcount parity of a nonnegative integer array."""
    return np.bitwise_count(values).astype(np.int64) & 1
