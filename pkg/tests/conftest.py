"""Shared fixtures and slow reference implementations.

The reference helpers here recompute traces and fibre counts straight
from the definitions (Frobenius-power sums, per-x field evaluation), so
the fast mask kernels are always checked against an independent path.
"""

from __future__ import annotations

import pytest

from bch3.gf2m import FieldSpec, make_field


@pytest.fixture(scope="session")
def f4() -> FieldSpec:
    return make_field(4)


@pytest.fixture(scope="session")
def f5() -> FieldSpec:
    return make_field(5)


@pytest.fixture(scope="session")
def f7() -> FieldSpec:
    return make_field(7)


@pytest.fixture(scope="session")
def f9() -> FieldSpec:
    return make_field(9)


def trace_by_definition(field: FieldSpec, a: int) -> int:
    """a + a^2 + ... + a^(2^(m-1)), no mask shortcuts."""
    acc = a
    s = a
    for _ in range(field.m - 1):
        s = field.mul(s, s)
        acc ^= s
    assert acc in (0, 1)
    return acc


def phi_by_hand(field: FieldSpec, i: int, x: int, lam: int) -> int:
    """The seven family functions evaluated term by term."""
    x3 = field.mul(field.mul(x, x), x)
    ix = field.inv(x)
    ix3 = field.mul(field.mul(ix, ix), ix)
    terms = {
        1: x3 ^ x,
        2: ix3 ^ ix,
        3: x ^ ix,
        4: x3 ^ x ^ ix3 ^ ix,
        5: x3 ^ ix,
        6: ix3 ^ x,
        7: x3 ^ ix3,
    }
    return field.mul(lam, terms[i])


def n_count_slow(field: FieldSpec, i: int, lam: int, offset_bit: int) -> int:
    return sum(
        1
        for x in range(1, field.q)
        if trace_by_definition(field, phi_by_hand(field, i, x, lam)) == offset_bit
    )


def g_count_slow(field: FieldSpec, lam: int) -> int:
    count = 0
    for x in range(1, field.q):
        value = field.mul(lam, field.mul(field.mul(x, x), x)) ^ field.inv(x)
        count += trace_by_definition(field, value) == 0
    return count
