"""Exact integer and rational kernel.

Python's ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the canonical rational; everything here stays exact. No floats.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def int_det(m: Matrix) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError(f"int_det needs a square matrix, got {k} rows of lengths "
                         f"{sorted({len(r) for r in m})}")
    if k == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if a[i][i] == 0:
            for r in range(i + 1, k):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        for r in range(i + 1, k):
            ar = a[r]
            f = ar[i]
            ai = a[i]
            for c in range(i + 1, k):
                ar[c] = (ar[c] * piv - f * ai[c]) // prev
            ar[i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def int_rank(rows: Matrix) -> int:
    """Rank over the rationals of an integer matrix (fraction-free elimination)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank]
        for r in range(rank + 1, len(a)):
            f = a[r][c]
            if f:
                row = a[r]
                a[r] = [x * p[c] - f * y for x, y in zip(row, p)]
        rank += 1
        if rank == len(a):
            break
    return rank


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return int_rank([[x - y for x, y in zip(p, p0)] for p in points[1:]])


def nullspace_vector(rows: Matrix, ncols: int) -> list[int]:
    """A primitive integer vector spanning the kernel of ``rows``.

    The kernel must be one-dimensional.
    """
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise ValueError(f"kernel has dimension {len(free)}, expected 1")
    fc = free[0]
    vec = [Fraction(0)] * ncols
    vec[fc] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -a[i][fc]
    den = lcm(*(v.denominator for v in vec))
    return primitive([v.numerator * (den // v.denominator) for v in vec])


def primitive(vec: Sequence[int]) -> list[int]:
    """Divide an integer vector by the gcd of its entries."""
    g = gcd(*vec)
    if g == 0:
        return list(vec)
    return [v // g for v in vec]


def binomial(t: int, k: int) -> int:
    """C(t, k) as a polynomial in ``t``: t(t-1)...(t-k+1)/k!, valid for negative t."""
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 1
    for i in range(k):
        num *= t - i
    return num // factorial(k)


def decimal_render(q: Fraction | int, digits: int) -> str:
    """Decimal expansion of ``q`` truncated toward zero after ``digits`` places.

    >>> decimal_render(Fraction(11, 720), 6)
    '0.015277'
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**digits // q.denominator
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def scientific_render(q: Fraction | int, digits: int) -> str:
    """Truncated mantissa and power of ten, e.g. ``1.527e-2`` for 11/720 at 3 digits."""
    q = Fraction(q)
    if q == 0:
        return decimal_render(q, digits) + "e0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    k = len(str(q.numerator)) - len(str(q.denominator))
    if q < Fraction(10) ** k:
        k -= 1
    return f"{sign}{decimal_render(q / Fraction(10) ** k, digits)}e{k}"


def e_partial(K: int) -> Fraction:
    """Sum of 1/k! for k = 0..K."""
    total = 0
    term = 1
    # accumulate with common denominator K!
    for k in range(K, -1, -1):
        total += term
        term *= k
    return Fraction(total, factorial(K))


def e_bounds(K: int) -> tuple[Fraction, Fraction]:
    """Rational interval containing e, from the partial sum up to 1/K!.

    The tail sum over k > K is below 2/(K+1)!.
    """
    lo = e_partial(K)
    return lo, lo + Fraction(2, factorial(K + 1))


def _terms_for(digits: int) -> int:
    K = 1
    bound = Fraction(1, 10 ** (digits + 2))
    while Fraction(2, factorial(K + 1)) >= bound:
        K += 1
    return K


def e_digits(digits: int) -> str:
    """First ``digits`` decimals of e, truncated.

    Starts from the term count whose tail bound is below 10^-(digits+2) and
    keeps adding terms until both ends of the interval render identically.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    K = _terms_for(digits)
    while True:
        lo, hi = e_bounds(K)
        s = decimal_render(lo, digits)
        if s == decimal_render(hi, digits):
            return s
        K += 1


def render_interval(lo: Fraction, hi: Fraction, digits: int) -> str | None:
    """Common truncated rendering of every value in [lo, hi], or None."""
    s = decimal_render(lo, digits)
    return s if s == decimal_render(hi, digits) else None
