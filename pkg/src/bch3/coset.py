"""The weight-4 coset invariant N, its distribution tables, and bounds.

For odd m and a normalized representative A in {0, 1} the invariant is a
linear combination of the seven fibre counts at lam = B + 1:

    trace class 0:  N = (2q - 2 - 2*(n1 + n2 + n3 - n4 - n5 - n6 + n7)) / 24
    trace class 1:  N = (-6q - 2 + 2*(n1 + ... + n7)) / 24

with every count taken offset-free.  General (A, B) reduce to this shape
along the translation x_i -> x_i + s, which fixes lam = B + A^2 + A + 1
and the trace class of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import curves
from .curves import DegenerateLambdaError
from .gf2m import FieldSpec, isqrt_floor, make_field

SUPPORTED_M = (5, 7, 9, 11, 13)

# Fixed-point scale for the single irrational bound term 4*sqrt(2).
_SCALE = 10**6
_FOUR_SQRT2 = 5656854  # floor(4*sqrt(2) * 1e6)
_EVEN_GUARD = 24 * _SCALE // 1000  # endpoints must clear even integers by 1e-3


def _require_odd(m: int) -> None:
    if m % 2 == 0:
        raise ValueError(f"the pipeline is defined for odd extension degrees, got m={m}")


def N_of(field: FieldSpec, trace_class_a: int, b: int) -> int:
    """The invariant for normalized A (trace class only) and B = b."""
    _require_odd(field.m)
    if trace_class_a not in (0, 1):
        raise ValueError("trace_class_a must be 0 or 1")
    field._check(b)
    lam = b ^ 1
    if lam == 0:
        raise DegenerateLambdaError(
            f"b=0x{b:x} gives lam=0: the coset family degenerates into twelve lines"
        )
    n = [curves.n_count(field, i, lam, 0) for i in range(1, 8)]
    return _combine(field.q, trace_class_a, n)


def _combine(q: int, trace_class_a: int, n) -> int:
    if trace_class_a == 0:
        num = 2 * q - 2 - 2 * (n[0] + n[1] + n[2] - n[3] - n[4] - n[5] + n[6])
    else:
        num = -6 * q - 2 + 2 * sum(n[:7])
    if num % 24 or num < 0 or (num // 24) % 2:
        raise AssertionError(f"invariant left its lattice: numerator {num}")
    return num // 24


def N_of_general(field: FieldSpec, a: int, b: int) -> int:
    """The invariant for arbitrary A: translate to the normalized form."""
    field._check(a)
    lam = curves.lambda_of(field, a, b)
    if lam == 0:
        raise DegenerateLambdaError(
            f"a=0x{a:x}, b=0x{b:x} give lam=0: the coset family degenerates into twelve lines"
        )
    return N_of(field, field.trace(a), lam ^ 1)


@dataclass(frozen=True)
class DistributionTable:
    """Histogram of the invariant over both trace classes and all valid B."""

    m: int
    modulus: int
    per_class: tuple[dict[int, int], dict[int, int]]
    normalized: dict[int, int]

    def to_json_dict(self) -> dict:
        return {
            "q": 1 << self.m,
            "modulus": f"0x{self.modulus:x}",
            "distribution": {str(k): v for k, v in sorted(self.normalized.items())},
            "normalized_by": 1 << (self.m - 1),
        }

    def to_tsv(self) -> str:
        lines = ["N\tcount_class0\tcount_class1\tnormalized"]
        for key in sorted(self.normalized):
            c0 = self.per_class[0].get(key, 0)
            c1 = self.per_class[1].get(key, 0)
            lines.append(f"{key}\t{c0}\t{c1}\t{c0 + c1}")
        return "\n".join(lines) + "\n"


def distribution(m: int, modulus: int | None = None) -> DistributionTable:
    """Exact value histogram for one supported field size.

    Values for both trace classes come out of a single batched pass over
    the fibre-count tables; B is the element lam + 1 as lam runs over
    F_q^*, so exactly q - 1 parameters land in each class.
    """
    _require_odd(m)
    if not SUPPORTED_M[0] <= m <= SUPPORTED_M[-1]:
        raise ValueError(f"supported extension degrees are {SUPPORTED_M}, got {m}")
    field = make_field(m, modulus)
    q = field.q
    counts = curves.n_counts_all(field)[:, 1:]  # drop the lam = 0 column
    n1, n2, n3, n4, n5, n6, n7 = (counts[i] for i in range(7))
    num0 = 2 * q - 2 - 2 * (n1 + n2 + n3 - n4 - n5 - n6 + n7)
    num1 = -6 * q - 2 + 2 * counts.sum(axis=0)
    per_class = []
    for num in (num0, num1):
        if (num % 24).any() or (num < 0).any():
            raise AssertionError("invariant left its lattice")
        values = num // 24
        if (values & 1).any():
            raise AssertionError("invariant must be even")
        hist = np.bincount(values)
        per_class.append({int(v): int(c) for v, c in enumerate(hist) if c})
    merged: dict[int, int] = {}
    for hist in per_class:
        for value, count in hist.items():
            merged[value] = merged.get(value, 0) + count
    merged = dict(sorted(merged.items()))
    table = DistributionTable(
        m=m, modulus=field.modulus, per_class=(per_class[0], per_class[1]), normalized=merged
    )
    if sum(merged.values()) != 2 * (q - 1):
        raise AssertionError("class histograms must cover all q-1 parameters twice")
    lo, hi = refined_even_interval(m)
    if min(merged) < lo or max(merged) > hi:
        raise AssertionError("a value escaped the proven interval")
    return table


@dataclass(frozen=True)
class BoundReport:
    """The three value enclosures for one q: the plain genus bound scaled
    to the invariant, its refinement, and the heuristic interval."""

    q: int
    weil: tuple[float, float]
    refined_even: tuple[int, int]
    heuristic_even: tuple[int, int]


def weil_interval(m: int) -> tuple[float, float]:
    """Genus-13 point-count bound scaled to the invariant, clamped at 0."""
    _require_odd(m)
    q = 1 << m
    t = isqrt_floor(4 * q)
    return max((q - 11 - 13 * t) / 24, 0.0), (q + 1 + 13 * t) / 24


def _even_floor(num: int, den: int) -> int:
    return 2 * (num // (2 * den))


def _even_ceil(num: int, den: int) -> int:
    return -2 * (-num // (2 * den))


def refined_even_interval(m: int) -> tuple[int, int]:
    """Even integers admissible under the refined trace bound: the
    smallest even above the lower endpoint (clamped at 0) through the
    largest even below the upper one.  Exact integer arithmetic."""
    _require_odd(m)
    q = 1 << m
    t = isqrt_floor(4 * q)
    s = 1 << ((m + 3) // 2)  # 2*sqrt(2q), exact for odd m
    lo = max(_even_ceil(q - 11 - s - 8 * t, 24), 0)
    hi = _even_floor(q + 1 + s + 8 * t, 24)
    return lo, hi


def heuristic_even_interval(m: int) -> tuple[int, int]:
    """Smallest even-endpoint interval containing the heuristic enclosure.

    The lone irrational term 4*sqrt(2) is carried in fixed point at 1e-6
    resolution; endpoints stay more than 1e-3 away from even integers for
    every supported q, which is asserted before rounding.
    """
    _require_odd(m)
    q = 1 << m
    t = isqrt_floor(4 * q)
    s = 1 << ((m + 3) // 2)
    den = 24 * _SCALE
    lo_num = (q - 4 * t - s + 4) * _SCALE + _FOUR_SQRT2
    hi_num = (q + 4 * t + s + 14) * _SCALE + _FOUR_SQRT2
    for num in (lo_num, hi_num):
        r = num % (2 * den)
        if min(r, 2 * den - r) <= _EVEN_GUARD:
            raise AssertionError("endpoint too close to an even integer to round safely")
    return max(_even_floor(lo_num, den), 0), _even_ceil(hi_num, den)


def bounds(m: int) -> BoundReport:
    """All three enclosures for 2^m."""
    _require_odd(m)
    return BoundReport(
        q=1 << m,
        weil=weil_interval(m),
        refined_even=refined_even_interval(m),
        heuristic_even=heuristic_even_interval(m),
    )


@dataclass(frozen=True)
class GammaReport:
    """Comparison of the q = 2^13 histogram against a reference profile:
    histogram and residual are keyed by l with value = 290 + 2l."""

    histogram: dict[int, int]
    gamma: tuple[int, ...]
    residual: dict[int, int]


GAMMA_BASE = 290
GAMMA_LEN = 51


def load_gamma(path=None) -> tuple[int, ...]:
    """The 51-entry reference profile, one integer per line."""
    if path is None:
        text = resources.files("bch3").joinpath("data/gamma_q8192.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    values = tuple(int(line) for line in text.split() if line.strip())
    if len(values) != GAMMA_LEN:
        raise ValueError(f"expected {GAMMA_LEN} profile entries, got {len(values)}")
    return values


def gamma_report(m: int, gamma, table: DistributionTable | None = None) -> GammaReport:
    """Histogram of the m = 13 run re-indexed by l, with residuals against
    13 times the reference profile."""
    if m != 13:
        raise ValueError("the profile comparison is defined for m = 13")
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != GAMMA_LEN:
        raise ValueError(f"expected {GAMMA_LEN} profile entries, got {len(gamma)}")
    if table is None:
        table = distribution(13)
    histogram = {ell: 0 for ell in range(GAMMA_LEN)}
    for value, count in table.normalized.items():
        if value < GAMMA_BASE or value > GAMMA_BASE + 2 * (GAMMA_LEN - 1) or value % 2:
            raise ValueError(f"histogram key {value} outside the expected window")
        histogram[(value - GAMMA_BASE) // 2] = count
    residual = {ell: histogram[ell] - 13 * gamma[ell] for ell in range(GAMMA_LEN)}
    return GammaReport(histogram=histogram, gamma=gamma, residual=residual)


def calibrate_boundary(m: int) -> dict[int, int]:
    """Constant linking the combined trace to the invariant, per class.

    For every valid B the quantity q + 1 - t_combined - 24*N must come out
    the same within a trace class (the rational points sitting above
    x = 0, 1, infinity); a drift signals a broken boundary convention in
    the trace derivation.
    """
    if m not in (5, 7):
        raise ValueError("calibration runs on the oracle-sized fields m=5 and m=7")
    field = make_field(m)
    q = field.q
    out: dict[int, int] = {}
    for cls in (0, 1):
        seen = set()
        for b in range(q):
            if b == 1:
                continue
            profile = curves.curve_traces(curves.curve_params(field, cls, b))
            seen.add(q + 1 - profile.t_combined - 24 * N_of(field, cls, b))
        if len(seen) != 1:
            raise AssertionError(f"boundary constant drifts within class {cls}: {sorted(seen)}")
        out[cls] = seen.pop()
    return out
