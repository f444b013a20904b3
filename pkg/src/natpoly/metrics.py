"""Invariants of a lattice polytope: volumes, skeleton, faces, width, Ehrhart data."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, asdict
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from .arith import binomial
from .hull import HullError, Polytope, _bits, build_hull
from .numsys import SubsetSpec, member_points

ENUM_DIM_ENV = "NATPOLY_ENUM_DIM_LIMIT"
DEFAULT_ENUM_DIM_LIMIT = 10


class CapabilityError(RuntimeError):
    """Request exceeds a configured computational limit."""


def enum_dim_limit() -> int:
    return int(os.environ.get(ENUM_DIM_ENV, DEFAULT_ENUM_DIM_LIMIT))


# volumes ----------------------------------------------------------------------

def normalized_volume(p: Polytope) -> int:
    return p.normalized_volume


def euclidean_volume(p: Polytope) -> Fraction:
    return Fraction(p.normalized_volume, factorial(p.dim))


# skeleton -----------------------------------------------------------------------

def skeleton(p: Polytope) -> list[tuple[int, int]]:
    """Edges as pairs of point indices.

    Two vertices span an edge when the facets containing both meet in exactly
    those two vertices.
    """
    verts = p.vertex_indices
    vmasks = p.facet_vertex_masks()
    all_v = sum(1 << v for v in verts)
    on = {v: [m for m in vmasks if m >> v & 1] for v in verts}
    edges = []
    for i, v in enumerate(verts):
        fv = on[v]
        for w in verts[i + 1:]:
            pair = (1 << v) | (1 << w)
            inter = all_v
            for m in fv:
                if m >> w & 1:
                    inter &= m
                    if inter == pair:
                        break
            if inter == pair:
                edges.append((v, w))
    return edges


def diameter(edges: Sequence[tuple[int, int]], vertices: Sequence[int] | int) -> int:
    """Largest shortest-path distance in the vertex-edge graph."""
    if isinstance(vertices, int):
        vertices = range(vertices)
    vertices = list(vertices)
    if len(vertices) <= 1:
        return 0
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    best = 0
    for s in vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if len(dist) != len(vertices):
            raise HullError("polytope graph is disconnected")
        best = max(best, max(dist.values()))
    return best


# faces --------------------------------------------------------------------------

def faces_by_dimension(p: Polytope) -> list[set[int]]:
    """Vertex sets (bitmasks) of the proper faces, indexed by dimension.

    Goes down from the facets: the facets of a face G are the inclusion-maximal
    sets among G & F over the polytope's facets F, so dimensions come from the
    lattice itself.
    """
    n = p.dim
    facets = p.facet_vertex_masks()
    levels: list[set[int]] = [set() for _ in range(n)]
    if n == 0:
        return levels
    levels[n - 1] = set(facets)
    for d in range(n - 1, 0, -1):
        below = levels[d - 1]
        for g in levels[d]:
            cands = {g & f for f in facets}
            cands.discard(g)
            cands.discard(0)
            for c in cands:
                if c not in below and not any(c != e and c & e == c for e in cands):
                    below.add(c)
    return levels


def f_vector(p: Polytope) -> list[int]:
    """Face counts f_0 .. f_{n-1}."""
    return [len(level) for level in faces_by_dimension(p)]


def euler_sum(f: Sequence[int]) -> int:
    """Alternating sum with f_{-1} = f_n = 1 added; zero for any polytope f-vector."""
    n = len(f)
    return -1 + sum((-1) ** i * x for i, x in enumerate(f)) + (-1) ** n


# width --------------------------------------------------------------------------

def facet_width(p: Polytope) -> int | None:
    if p.dim == 0:
        return None
    verts = p.vertices
    best = 0
    for F in p.facets:
        vals = [sum(a * x for a, x in zip(F.normal, v)) for v in verts]
        best = max(best, max(vals) - min(vals))
    return best


# lattice point enumeration -----------------------------------------------------------

def _box(p: Polytope) -> tuple[np.ndarray, np.ndarray]:
    v = np.array(p.vertices, dtype=np.int64)
    return v.min(axis=0), v.max(axis=0)


def _enumerate(A: np.ndarray, rhs: np.ndarray, lo_box: np.ndarray, hi_box: np.ndarray) -> int:
    """Count integer x in the box with A x <= rhs.

    Coordinates are fixed one at a time; each inequality bounds the next
    coordinate once the later ones are relaxed to their box range.
    """
    m, n = A.shape
    if n == 0:
        return int(np.all(rhs >= 0))
    relax = np.minimum(A * lo_box, A * hi_box)
    tail = np.zeros((m, n + 1), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        tail[:, j] = tail[:, j + 1] + relax[:, j]
    partial = np.zeros((1, m), dtype=np.int64)
    for j in range(n):
        slack = rhs[None, :] - partial - tail[None, :, j + 1]
        a = A[:, j]
        lo = np.full(len(partial), lo_box[j], dtype=np.int64)
        hi = np.full(len(partial), hi_box[j], dtype=np.int64)
        ok = np.ones(len(partial), dtype=bool)
        for f in range(m):
            af = a[f]
            s = slack[:, f]
            if af > 0:
                hi = np.minimum(hi, np.floor_divide(s, af))
            elif af < 0:
                lo = np.maximum(lo, -np.floor_divide(s, -af))
            else:
                ok &= s >= 0
        width = np.where(ok, hi - lo + 1, 0)
        width = np.maximum(width, 0)
        if j == n - 1:
            return int(width.sum())
        keep = width > 0
        partial, lo, width = partial[keep], lo[keep], width[keep]
        if not len(partial):
            return 0
        rep = np.repeat(np.arange(len(partial)), width)
        starts = np.cumsum(width) - width
        vals = lo[rep] + (np.arange(len(rep)) - starts[rep])
        partial = partial[rep] + vals[:, None] * a[None, :]
    return 0


def _lattice_count(p: Polytope, t: int, strict: bool) -> int:
    n = p.dim
    if n == 0:
        return 0 if strict else 1
    if t == 0:
        return 0 if strict else 1
    facets = p.facets
    A = np.array([F.normal for F in facets], dtype=np.int64)
    b = np.array([F.offset for F in facets], dtype=np.int64)
    lo, hi = _box(p)
    if np.abs(A).max() * max(abs(int(lo.min())), int(hi.max()), 1) * t * n > 2**60:
        raise CapabilityError("coordinates too large for machine-integer enumeration")
    rhs = t * b - (1 if strict else 0)
    return _enumerate(A, rhs, t * lo, t * hi)


def _check_dim(p: Polytope) -> None:
    lim = enum_dim_limit()
    if p.dim > lim:
        raise CapabilityError(f"dimension {p.dim} exceeds the enumeration limit {lim} "
                              f"(raise it with {ENUM_DIM_ENV})")


def ehrhart_count(p: Polytope, t: int) -> int:
    """Number of lattice points in the dilate t*P."""
    if t < 0:
        raise ValueError("t must be >= 0")
    _check_dim(p)
    return _lattice_count(p, t, strict=False)


def interior_lattice_count(p: Polytope) -> int:
    """Lattice points strictly inside P.

    Not dimension-gated: at t=1 the pruned enumeration stays small in practice.
    """
    return _lattice_count(p, 1, strict=True)


def h_star(p: Polytope) -> list[int]:
    """h*-vector (h_0 .. h_n) from the Ehrhart counts L(0) .. L(n)."""
    _check_dim(p)
    n = p.dim
    L = [_lattice_count(p, t, strict=False) for t in range(n + 1)]
    h: list[int] = []
    for j in range(n + 1):
        h.append(L[j] - sum(h[i] * binomial(j + n - i, n) for i in range(j)))
    if any(x < 0 for x in h) or h[0] != 1:
        raise HullError(f"invalid h*-vector {h}")
    return h


def h_star_degree(h: Sequence[int]) -> int:
    return max(i for i, x in enumerate(h) if x)


# records -----------------------------------------------------------------------------

@dataclass
class MetricsRecord:
    N: int
    subset: str
    dim: int
    diameter: int | None
    Vol: int
    vol: Fraction
    n_vertices: int
    n_edges: int | None
    n_facets: int | None
    facet_width: int | None
    n_lattice_points: int
    n_interior_points: int | None = None
    h_star: list[int] | None = None
    f_vector: list[int] | None = None
    vertices: list[tuple[int, ...]] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["vol"] = f"{self.vol.numerator}/{self.vol.denominator}" if self.vol.denominator != 1 \
            else str(self.vol.numerator)
        if self.vertices is not None:
            d["vertices"] = [list(v) for v in self.vertices]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsRecord":
        d = dict(d)
        d["vol"] = Fraction(d["vol"])
        if d.get("vertices") is not None:
            d["vertices"] = [tuple(v) for v in d["vertices"]]
        return cls(**d)


def record_from_polytope(p: Polytope, N: int, subset: str = "naturals", *,
                         with_h_star: bool | None = None, with_faces: bool = False,
                         with_vertices: bool = False) -> MetricsRecord:
    """Fill a MetricsRecord; Ehrhart fields only up to the enumeration limit."""
    n = p.dim
    if n == 0:
        rec = MetricsRecord(N, subset, 0, None, p.normalized_volume, euclidean_volume(p),
                            p.n_vertices, None, None, None, len(p.lattice_points),
                            n_interior_points=0, h_star=[1])
        if with_faces:
            rec.f_vector = []
        if with_vertices:
            rec.vertices = p.vertices
        return rec
    edges = skeleton(p)
    rec = MetricsRecord(
        N=N, subset=subset, dim=n,
        diameter=diameter(edges, p.vertex_indices),
        Vol=p.normalized_volume, vol=euclidean_volume(p),
        n_vertices=p.n_vertices, n_edges=len(edges), n_facets=p.n_facets,
        facet_width=facet_width(p), n_lattice_points=len(p.lattice_points),
        n_interior_points=interior_lattice_count(p),
    )
    if with_h_star is None:
        with_h_star = n <= enum_dim_limit()
    if with_h_star:
        rec.h_star = h_star(p)
    if with_faces:
        rec.f_vector = f_vector(p)
    if with_vertices:
        rec.vertices = p.vertices
    return rec


def metrics_record(subset: SubsetSpec | str, N: int, **kw) -> MetricsRecord:
    if isinstance(subset, str):
        subset = SubsetSpec(subset)
    p = build_hull(member_points(subset, N))
    return record_from_polytope(p, N, subset.kind, **kw)
