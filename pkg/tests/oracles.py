"""Independent brute-force checks, kept apart from the code paths they verify."""
from __future__ import annotations

import itertools
from fractions import Fraction

from natpoly.arith import int_det


def cofactor_det(m):
    if len(m) == 0:
        return 1
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def naive_primes(N):
    return [p for p in range(2, N + 1) if all(p % d for d in range(2, p))]


def _solve(cols, rhs):
    """Exact solution of sum_j lam_j cols[j] = rhs, or None if inconsistent."""
    n, k = len(rhs), len(cols)
    a = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(n)]
    r = 0
    piv_cols = []
    for c in range(k):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    lam = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        lam[c] = a[i][k]
    return lam


def in_hull(x, pts):
    """Caratheodory: x lies in conv(pts) iff it lies in some small sub-simplex."""
    n = len(x)
    for size in range(1, min(len(pts), n + 1) + 1):
        for sub in itertools.combinations(pts, size):
            p0 = sub[0]
            cols = [[u - v for u, v in zip(p, p0)] for p in sub[1:]]
            rhs = [u - v for u, v in zip(x, p0)]
            if not cols:
                if all(r == 0 for r in rhs):
                    return True
                continue
            lam = _solve(cols, rhs)
            if lam is not None and all(v >= 0 for v in lam) and sum(lam) <= 1:
                return True
    return False


def extreme_points(pts):
    pts = [tuple(p) for p in pts]
    return {p for p in pts if not in_hull(p, [q for q in pts if q != p])}


def placing_volume(pts):
    """Normalized volume by a determinant-only placing triangulation.

    Every simplex and visibility test is a determinant sign; nothing is shared
    with the facet machinery of the hull engine.
    """
    pts = [tuple(p) for p in pts]
    n = len(pts[0])
    if n == 0:
        return 1

    def det_of(simplex):
        p0 = simplex[0]
        return int_det([[u - v for u, v in zip(p, p0)] for p in simplex[1:]])

    start = [pts[0]]
    for p in pts[1:]:
        if len(start) == n + 1:
            break
        cand = start + [p]
        p0 = cand[0]
        from natpoly.arith import int_rank
        if int_rank([[u - v for u, v in zip(q, p0)] for q in cand[1:]]) == len(cand) - 1:
            start.append(p)
    simplices = [tuple(start)]
    rest = [p for p in pts if p not in start]
    for x in rest:
        faces: dict[frozenset, tuple] = {}
        for s in simplices:
            for i in range(n + 1):
                f = frozenset(s[:i] + s[i + 1:])
                if f in faces:
                    faces[f] = None
                else:
                    faces[f] = (s, s[i])
        added = []
        for f, owner in faces.items():
            if owner is None:
                continue
            s, opp = owner
            face = sorted(f)
            d_opp = det_of(face + [opp])
            d_x = det_of(face + [x])
            if d_x != 0 and (d_x > 0) != (d_opp > 0):
                added.append(tuple(face) + (x,))
        simplices.extend(added)
    return sum(abs(det_of(list(s))) for s in simplices)


def grid_count(facets, vertices, t, strict=False):
    """Lattice points of t*P by scanning the whole bounding box."""
    n = len(vertices[0])
    lo = [t * min(v[i] for v in vertices) for i in range(n)]
    hi = [t * max(v[i] for v in vertices) for i in range(n)]
    count = 0
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        ok = True
        for F in facets:
            s = sum(a * xi for a, xi in zip(F.normal, x))
            if s > t * F.offset or (strict and s == t * F.offset):
                ok = False
                break
        count += ok
    return count
