"""Exact partial sums of polytope volumes over subsets of the naturals.

All sums are partial: they stop at ``upto`` and approach their limits from
below. Digits are only ever *claimed* where they survive extending the sum
by a quarter (a heuristic, reported as such).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .arith import decimal_render, e_bounds, render_interval
from .hull import grow
from .numsys import SubsetSpec


@dataclass(frozen=True)
class VolumeSum:
    subset: str
    upto: int
    value: Fraction
    terms: int


def volume_terms(subset: SubsetSpec | str, upto: int) -> list[tuple[int, Fraction]]:
    """``(M, vol(P_M))`` for every member M <= upto, each over the subset's own points."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    return [(M, Fraction(p.normalized_volume, factorial(p.dim)))
            for M, p in grow(subset, upto)]


def volume_sum(subset: SubsetSpec | str, upto: int) -> VolumeSum:
    if isinstance(subset, str):
        subset = SubsetSpec(subset)
    terms = volume_terms(subset, upto)
    return VolumeSum(subset.kind, upto, sum((v for _, v in terms), Fraction(0)), len(terms))


def rho_digits(upto: int, digits: int) -> str:
    """Truncated decimals of the naturals' volume sum up to ``upto``.

    This is a partial sum; the limiting constant is larger.
    """
    return decimal_render(volume_sum("naturals", upto).value, digits)


def ratio_to_e(s: VolumeSum | Fraction, digits: int) -> str:
    """Truncated decimals of ``s / e``, exact for the partial sum.

    The interval for e is tightened until both ends give the same digits.
    """
    value = s.value if isinstance(s, VolumeSum) else Fraction(s)
    K = 10
    while True:
        lo, hi = e_bounds(K)
        text = render_interval(value / hi, value / lo, digits)
        if text is not None:
            return text
        K += 5


def stable_digits(a: Fraction, b: Fraction, max_digits: int = 200) -> int:
    """Number of leading decimals on which two sums agree (truncated rendering)."""
    ra, rb = decimal_render(a, max_digits), decimal_render(b, max_digits)
    if ra.split(".")[0] != rb.split(".")[0]:
        return 0
    fa, fb = ra.split(".")[1], rb.split(".")[1]
    k = 0
    while k < max_digits and fa[k] == fb[k]:
        k += 1
    return k


def claimed_digits(subset: SubsetSpec | str, upto: int, max_digits: int = 200) -> tuple[VolumeSum, int]:
    """Partial sum at ``upto`` plus the digit count unchanged at ``ceil(1.25*upto)``.

    Heuristic: the tail is not bounded rigorously, only observed to be stable.
    """
    if isinstance(subset, str):
        subset = SubsetSpec(subset)
    far = -(-5 * upto // 4)
    terms = volume_terms(subset, far)
    near = sum((v for M, v in terms if M <= upto), Fraction(0))
    total = sum((v for _, v in terms), Fraction(0))
    n_near = sum(1 for M, _ in terms if M <= upto)
    return VolumeSum(subset.kind, upto, near, n_near), stable_digits(near, total, max_digits)


def correlation_estimate(n_vertices: float, n: int) -> float:
    """2 (ln N_v)^sqrt(n), an empirical fit of normalized volume; plotting only."""
    return 2.0 * math.log(n_vertices) ** math.sqrt(n)
