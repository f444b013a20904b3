"""Exact incremental convex hull of lattice points in any dimension.

The facet list is updated beneath-beyond style: facets the new point sees are
dropped, and every adjacent (seen, unseen) facet pair spanning a horizon ridge
is combined into the hyperplane through the ridge and the new point. Facets
are true (not necessarily simplicial) facets with primitive integer normals.

Alongside, a placing triangulation is kept. Each boundary simplex remembers
its normalized volume inside its facet hyperplane, so coning it to a new
point at lattice distance ``d`` adds a simplex of normalized volume
``d * w`` and no determinant is ever evaluated after the starting simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from .arith import affine_rank, int_det, nullspace_vector
from .numsys import SubsetSpec, PointCloud, exponent_vector, factorize, member_points

Point = tuple[int, ...]
Key = tuple[tuple[int, ...], int]


class HullError(RuntimeError):
    """Broken geometric invariant; signals a bug or degenerate input."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int
    incident_vertices: frozenset[int]


class _FacetState:
    __slots__ = ("mask", "boundary")

    def __init__(self, mask: int, boundary: dict[tuple[int, ...], int]):
        self.mask = mask
        # boundary simplex (sorted point indices) -> normalized volume within the facet
        self.boundary = boundary

    def copy(self) -> "_FacetState":
        return _FacetState(self.mask, dict(self.boundary))


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(ai * xi for ai, xi in zip(a, x))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Polytope:
    """Convex hull of a growing set of lattice points.

    ``lattice_points`` holds every inserted point in insertion order; indices
    into it identify vertices, facet incidences and triangulation simplices.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.lattice_points: list[Point] = []
        self.members: list[int] = []
        self._index: dict[Point, int] = {}
        self._facets: dict[Key, _FacetState] = {}
        self._vertex_mask = 0
        self.triangulation: list[tuple[tuple[int, ...], int]] = []
        self._volume = 0

    # construction helpers -------------------------------------------------

    @classmethod
    def point(cls, x: Point = (), member: int = 1) -> "Polytope":
        p = cls(len(x))
        p._add_point(tuple(x), member)
        p._vertex_mask = 1
        p.triangulation = [((0,), 1)]
        p._volume = 1
        return p

    def copy(self) -> "Polytope":
        q = Polytope(self.ambient_dim)
        q.lattice_points = list(self.lattice_points)
        q.members = list(self.members)
        q._index = dict(self._index)
        q._facets = {k: f.copy() for k, f in self._facets.items()}
        q._vertex_mask = self._vertex_mask
        q.triangulation = list(self.triangulation)
        q._volume = self._volume
        return q

    def _add_point(self, x: Point, member: int | None) -> int:
        k = len(self.lattice_points)
        self.lattice_points.append(x)
        self.members.append(member if member is not None else k + 1)
        self._index[x] = k
        return k

    # read-only views --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.ambient_dim if self._facets else 0

    @property
    def vertex_indices(self) -> list[int]:
        return list(_bits(self._vertex_mask))

    @property
    def vertices(self) -> list[Point]:
        return [self.lattice_points[i] for i in _bits(self._vertex_mask)]

    @property
    def n_vertices(self) -> int:
        return self._vertex_mask.bit_count()

    @property
    def n_facets(self) -> int:
        return len(self._facets)

    @property
    def facets(self) -> list[Facet]:
        vm = self._vertex_mask
        return [Facet(a, b, frozenset(_bits(st.mask & vm)))
                for (a, b), st in sorted(self._facets.items())]

    def facet_vertex_masks(self) -> list[int]:
        """Vertex incidence of each facet as a bitmask over point indices."""
        vm = self._vertex_mask
        return [st.mask & vm for _, st in sorted(self._facets.items())]

    def facet_point_masks(self) -> list[int]:
        return [st.mask for _, st in sorted(self._facets.items())]

    @property
    def normalized_volume(self) -> int:
        return self._volume

    def boundary_simplices(self) -> list[tuple[Key, tuple[int, ...], int]]:
        return [(k, s, w) for k, st in sorted(self._facets.items())
                for s, w in sorted(st.boundary.items())]

    def __repr__(self) -> str:
        return (f"Polytope(dim={self.ambient_dim}, points={len(self.lattice_points)}, "
                f"vertices={self.n_vertices}, facets={self.n_facets}, "
                f"Vol={self._volume})")

    # mutation ---------------------------------------------------------------

    def _insert(self, x: Point, member: int | None = None) -> None:
        if len(x) != self.ambient_dim:
            raise ValueError(f"point {x} has length {len(x)}, expected {self.ambient_dim}")
        x = tuple(x)
        if x in self._index:
            return
        if not self._facets:
            raise HullError("cannot insert into a polytope that is not full-dimensional")
        facets = self._facets
        vals = {key: _dot(key[0], x) - key[1] for key in facets}
        plus = [k for k, v in vals.items() if v > 0]
        zero = [k for k, v in vals.items() if v == 0]
        kx = self._add_point(x, member)
        bit = 1 << kx
        if not plus:
            for key in zero:
                facets[key].mask |= bit
            return
        minus = [k for k, v in vals.items() if v < 0]

        masks = {k: st.mask for k, st in facets.items()}
        new: dict[Key, int] = {}
        for kp in plus:
            mp, sp = masks[kp], vals[kp]
            ap, bp = kp
            for km in minus:
                z = mp & masks[km]
                if any((z & m) == z for key, m in masks.items() if key is not kp and key is not km):
                    continue
                sm = -vals[km]
                am, bm = km
                a = [sp * u + sm * v for u, v in zip(am, ap)]
                b = sp * bm + sm * bp
                g = gcd(*a)
                key = (tuple(c // g for c in a), b // g)
                new[key] = new.get(key, 0) | z | bit

        # cone the triangulation over the boundary simplices the point sees
        pending: dict[tuple[int, ...], tuple[int, int]] = {}
        tri = self.triangulation
        for kp in plus:
            d = vals[kp]
            for sigma, w in facets[kp].boundary.items():
                vol = d * w
                tri.append((tuple(sorted(sigma + (kx,))), vol))
                self._volume += vol
                for v in sigma:
                    tau = tuple(sorted([u for u in sigma if u != v] + [kx]))
                    if tau in pending:
                        del pending[tau]
                    else:
                        pending[tau] = (vol, v)

        for kp in plus:
            del facets[kp]
        for key in zero:
            facets[key].mask |= bit
        for key, m in new.items():
            if key in facets:
                raise HullError(f"new facet {key} duplicates an existing one")
            facets[key] = _FacetState(m, {})

        hosts = [(key, facets[key]) for key in list(new) + zero]
        pts = self.lattice_points
        for tau, (vol, v) in pending.items():
            tm = _mask_of(tau)
            for (a, b), st in hosts:
                if st.mask & tm == tm:
                    dist = b - _dot(a, pts[v])
                    w, rem = divmod(vol, dist)
                    if rem or dist <= 0:
                        raise HullError("boundary simplex volume is not integral")
                    st.boundary[tau] = w
                    break
            else:
                raise HullError(f"boundary simplex {tau} lies on no facet")

        self._vertex_mask |= bit
        self._refresh_vertices()

    def _refresh_vertices(self) -> None:
        masks = [st.mask for st in self._facets.values()]
        full = (1 << len(self.lattice_points)) - 1
        vm = self._vertex_mask
        for v in list(_bits(vm)):
            b = 1 << v
            inter = full
            for m in masks:
                if m & b:
                    inter &= m
            if inter != b:
                vm &= ~b
        self._vertex_mask = vm

    def _pyramid(self, apex: Point, member: int | None = None) -> None:
        n = self.ambient_dim
        apex = tuple(apex)
        if len(apex) != n + 1 or apex[-1] <= 0:
            raise ValueError("apex must add one coordinate with positive last entry")
        h = apex[-1]
        base_y = apex[:-1]
        old_facets = self._facets
        old_tri = self.triangulation
        all_mask = (1 << len(self.lattice_points)) - 1

        self.ambient_dim = n + 1
        self.lattice_points = [p + (0,) for p in self.lattice_points]
        self._index = {p: i for i, p in enumerate(self.lattice_points)}
        ka = self._add_point(apex, member)
        abit = 1 << ka

        facets: dict[Key, _FacetState] = {}
        base_normal = (0,) * n + (-1,)
        facets[(base_normal, 0)] = _FacetState(all_mask, {s: w for s, w in old_tri})
        if not old_facets:
            # pyramid over a single point is a segment
            facets[((0,) * n + (1,), h)] = _FacetState(abit, {(ka,): 1})
        for (a, b), st in old_facets.items():
            na = [h * c for c in a] + [b - _dot(a, base_y)]
            g = gcd(*na)
            key = (tuple(c // g for c in na), h * b // g)
            facets[key] = _FacetState(
                st.mask | abit,
                {tuple(sorted(s + (ka,))): g * w for s, w in st.boundary.items()},
            )
        self._facets = facets
        self.triangulation = [(tuple(sorted(s + (ka,))), h * w) for s, w in old_tri]
        self._volume = sum(w for _, w in self.triangulation)
        self._vertex_mask |= abit

    def _init_simplex(self, idx: list[int]) -> None:
        pts = self.lattice_points
        simplex = [pts[i] for i in idx]
        p0 = simplex[0]
        det = abs(int_det([[u - v for u, v in zip(p, p0)] for p in simplex[1:]]))
        if det == 0:
            raise HullError("starting simplex is degenerate")
        for j, i in enumerate(idx):
            others = [k for k in idx if k != i]
            q0 = pts[others[0]]
            rows = [[u - v for u, v in zip(pts[k], q0)] for k in others[1:]]
            a = nullspace_vector(rows, self.ambient_dim) if rows else [1]
            b = _dot(a, q0)
            side = _dot(a, pts[i]) - b
            if side > 0:
                a, b, side = [-c for c in a], -b, -side
            tau = tuple(sorted(others))
            self._facets[(tuple(a), b)] = _FacetState(_mask_of(others), {tau: det // -side})
        self.triangulation = [(tuple(sorted(idx)), det)]
        self._volume = det
        self._vertex_mask = _mask_of(idx)


# public operations ------------------------------------------------------------

def build_hull(cloud: PointCloud | Sequence[Sequence[int]]) -> Polytope:
    """Convex hull of a point cloud, built by inserting points in member order.

    The starting simplex takes points in ascending order, keeping each one that
    raises the affine rank.
    """
    if isinstance(cloud, PointCloud):
        points, members = [tuple(p) for p in cloud.points], list(cloud.members)
        n = cloud.ambient_dim
    else:
        points = [tuple(p) for p in cloud]
        members = list(range(1, len(points) + 1))
        n = len(points[0]) if points else 0
    if not points:
        raise ValueError("empty point cloud")
    seen: dict[Point, int] = {}
    for p, m in zip(points, members):
        seen.setdefault(p, m)
    points, members = list(seen), list(seen.values())
    if len(points) == 1:
        return Polytope.point(points[0], members[0])

    chosen = [0]
    rank = 0
    for i in range(1, len(points)):
        if rank == n:
            break
        r = affine_rank([points[j] for j in chosen] + [points[i]])
        if r > rank:
            chosen.append(i)
            rank = r
    if rank < n:
        raise HullError(f"points span only {rank} of {n} dimensions")
    poly = Polytope(n)
    for i in chosen:
        poly._add_point(points[i], members[i])
    poly._init_simplex(list(range(len(chosen))))
    taken = set(chosen)
    rest = [i for i in range(len(points)) if i not in taken]
    for i in rest:
        poly._insert(points[i], members[i])
    return _reorder(poly, points)


def _reorder(poly: Polytope, order: list[Point]) -> Polytope:
    """Renumber point indices so lattice_points follows ``order``."""
    perm = [poly._index[p] for p in order]
    if perm == list(range(len(perm))):
        return poly
    old_to_new = {old: new for new, old in enumerate(perm)}

    def remask(m: int) -> int:
        return _mask_of(old_to_new[i] for i in _bits(m))

    def reidx(s):
        return tuple(sorted(old_to_new[i] for i in s))

    q = Polytope(poly.ambient_dim)
    q.lattice_points = [poly.lattice_points[i] for i in perm]
    q.members = [poly.members[i] for i in perm]
    q._index = {p: i for i, p in enumerate(q.lattice_points)}
    q._facets = {k: _FacetState(remask(st.mask), {reidx(s): w for s, w in st.boundary.items()})
                 for k, st in poly._facets.items()}
    q._vertex_mask = remask(poly._vertex_mask)
    q.triangulation = [(reidx(s), w) for s, w in poly.triangulation]
    q._volume = poly._volume
    return q


def insert_point(p: Polytope, x: Sequence[int], member: int | None = None) -> Polytope:
    """Hull of ``p`` and ``x`` as a new polytope; ``p`` is left untouched."""
    q = p.copy()
    q._insert(tuple(x), member)
    return q


def extend_dimension_with_apex(p: Polytope, apex: Sequence[int] | None = None,
                               member: int | None = None) -> Polytope:
    """Pyramid over ``p`` in one more dimension, apex at ``e_{n+1}`` by default."""
    q = p.copy()
    if apex is None:
        apex = (0,) * p.ambient_dim + (1,)
    q._pyramid(tuple(apex), member)
    return q


def locate(p: Polytope, x: Sequence[int]) -> str:
    """'interior', 'boundary' or 'outside'."""
    if not p._facets:
        return "boundary" if tuple(x) in p._index else "outside"
    on = False
    for a, b in p._facets:
        s = _dot(a, x)
        if s > b:
            return "outside"
        if s == b:
            on = True
    return "boundary" if on else "interior"


def grow(subset: SubsetSpec | str = "naturals", upto: int = 1) -> Iterator[tuple[int, Polytope]]:
    """Yield ``(M, P_M)`` for each subset member M <= upto, built incrementally.

    A member whose point lies in the current space is inserted; one that
    introduces a single new, largest prime becomes the apex of a pyramid.
    Anything else triggers a rebuild from scratch. The yielded polytope is
    updated in place on the next step; call ``copy()`` to keep it.
    """
    if isinstance(subset, str):
        subset = SubsetSpec(subset)
    poly: Polytope | None = None
    basis: list[int] = []
    done: list[int] = []
    for M in subset.members_upto(upto):
        done.append(M)
        primes = sorted(factorize(M))
        fresh = [q for q in primes if q not in basis]
        if poly is None:
            if fresh:
                poly = build_hull(member_points(SubsetSpec("explicit-list", tuple(done)), M))
                basis = sorted(fresh)
            else:
                poly = Polytope.point((), M)
        elif not fresh:
            poly._insert(exponent_vector(M, len(basis), basis), M)
        elif len(fresh) == 1 and (not basis or fresh[0] > basis[-1]) and poly.dim == len(basis):
            basis.append(fresh[0])
            poly._pyramid(exponent_vector(M, len(basis), basis), M)
        else:
            cloud = member_points(SubsetSpec("explicit-list", tuple(done)), M)
            poly = build_hull(cloud)
            basis = cloud.basis
        yield M, poly
