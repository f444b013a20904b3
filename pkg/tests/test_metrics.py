from fractions import Fraction
from math import comb

import pytest

from natpoly.arith import affine_rank, int_rank
from natpoly.hull import HullError, Polytope, build_hull
from natpoly.metrics import (CapabilityError, MetricsRecord, diameter, ehrhart_count,
                             euclidean_volume, euler_sum, f_vector, faces_by_dimension,
                             facet_width, h_star, h_star_degree, interior_lattice_count,
                             metrics_record, normalized_volume, skeleton)
from natpoly.numsys import exponent_vector, is_prime, member_points, prime_count, primes_up_to
from oracles import grid_count


def P(N):
    return build_hull(member_points("naturals", N))


def test_volume_examples():
    assert normalized_volume(P(6)) == 3
    assert normalized_volume(P(16)) == 16
    assert normalized_volume(P(100)) == 2516
    assert normalized_volume(P(1)) == 1
    assert euclidean_volume(P(14)) == Fraction(11, 720)
    assert euclidean_volume(P(2)) == 1
    assert euclidean_volume(P(12)) == Fraction(3, 40)


def test_skeleton_examples():
    assert len(skeleton(P(9))) == 10
    assert len(skeleton(P(6))) == 8
    simplex = build_hull([(0,) * 5] + [tuple(int(i == j) for j in range(5)) for i in range(5)])
    assert len(skeleton(simplex)) == comb(6, 2)


def test_diameter_examples():
    p9 = P(9)
    assert diameter(skeleton(p9), p9.vertex_indices) == 1
    p6 = P(6)
    assert diameter(skeleton(p6), p6.vertex_indices) == 2
    assert diameter([], 1) == 0


def test_diameter_disconnected():
    with pytest.raises(HullError):
        diameter([(0, 1)], 3)


def test_f_vector_examples():
    assert f_vector(P(11)) == [7, 19, 26, 19, 7]
    assert f_vector(P(5)) == [4, 6, 4]
    assert f_vector(P(17)) == [11, 46, 101, 130, 101, 46, 11]


def test_face_dimensions_by_rank():
    for N in range(2, 21):
        p = P(N)
        for d, level in enumerate(faces_by_dimension(p)):
            for mask in level:
                pts = [p.lattice_points[i] for i in range(mask.bit_length()) if mask >> i & 1]
                assert affine_rank(pts) == d


def test_cube_faces():
    cube = build_hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert f_vector(cube) == [8, 12, 6]
    assert euler_sum([8, 12, 6]) == 0


def test_facet_width_examples():
    assert facet_width(P(4)) == 2
    assert facet_width(P(9)) == 6
    assert facet_width(P(2)) == 1
    assert facet_width(P(1)) is None


def test_interior_examples():
    assert interior_lattice_count(build_hull([(0, 0), (3, 0), (0, 3)])) == 1
    assert interior_lattice_count(Polytope.point((0, 0))) == 0


def test_ehrhart_examples():
    assert ehrhart_count(P(4), 2) == 9
    assert ehrhart_count(P(7), 0) == 1
    for N in range(1, 29):
        assert ehrhart_count(P(N), 1) == N


def test_ehrhart_against_grid_small():
    for N in range(2, 11):
        p = P(N)
        for t in range(0, 5):
            assert ehrhart_count(p, t) == grid_count(p.facets, p.vertices, t), (N, t)


def test_ehrhart_random_polygons():
    tri = build_hull([(0, 0), (5, 1), (2, 4)])
    for t in range(4):
        assert ehrhart_count(tri, t) == grid_count(tri.facets, tri.vertices, t)
    assert interior_lattice_count(tri) == grid_count(tri.facets, tri.vertices, 1, strict=True)


def test_h_star_examples():
    assert h_star(P(12)) == [1, 6, 2, 0, 0, 0]
    assert h_star(P(25))[:4] == [1, 15, 20, 2] and not any(h_star(P(25))[4:])
    assert h_star(P(2)) == [1, 0]
    assert h_star_degree([1, 6, 2, 0]) == 2


def test_enumeration_limit(monkeypatch):
    p = P(31)
    with pytest.raises(CapabilityError):
        h_star(p)
    with pytest.raises(CapabilityError):
        ehrhart_count(p, 2)
    monkeypatch.setenv("NATPOLY_ENUM_DIM_LIMIT", "11")
    assert ehrhart_count(p, 1) == 31


def test_record_examples():
    r = metrics_record("naturals", 6)
    assert (r.diameter, r.dim, r.Vol, r.n_vertices, r.n_edges, r.n_facets, r.facet_width) == \
        (2, 3, 3, 5, 8, 5, 2)
    r1 = metrics_record("naturals", 1)
    assert r1.dim == 0 and r1.Vol == 1 and r1.diameter is None
    r = metrics_record("naturals", 56)
    assert (r.Vol, r.n_vertices, r.n_edges, r.n_facets, r.facet_width) == (343, 31, 346, 29, 36)
    assert r.h_star is None


def test_record_round_trip():
    r = metrics_record("naturals", 14, with_faces=True, with_vertices=True)
    assert MetricsRecord.from_dict(r.to_dict()) == r


# properties over N = 1..120 -------------------------------------------------------

def test_hollow(records):
    assert all(r.n_interior_points == 0 for r in records.values())


def test_h_star_identities(records):
    for N, r in records.items():
        if r.h_star is None or N == 1:
            continue
        n = r.dim
        assert len(r.h_star) == n + 1 and r.h_star[0] == 1
        assert r.h_star[1] == N - n - 1
        assert sum(r.h_star) == r.Vol
        assert r.h_star[n] == 0
        assert h_star_degree(r.h_star) < n


def test_diameter_bounds(records):
    for r in records.values():
        if r.dim:
            assert r.diameter <= 2
            assert r.diameter <= r.n_facets - r.dim


def test_vol_at_most_one(records):
    assert all(r.vol <= 1 for r in records.values())


def test_monotone_within_dimension(records):
    for N in range(2, len(records) + 1):
        if not is_prime(N):
            assert records[N].vol > records[N - 1].vol


def test_pyramid_recursion(records):
    for p in primes_up_to(len(records)):
        assert records[p].vol * prime_count(p) == records[p - 1].vol
        assert records[p].Vol == records[p - 1].Vol


def test_primes_decrease(records):
    ps = primes_up_to(len(records))
    for a, b in zip(ps, ps[1:]):
        assert records[a].vol > records[b].vol


def test_block_maxima(records):
    top = len(records)
    maxima = [1] + [p - 1 for p in primes_up_to(top + 1)[1:] if p - 1 <= top]
    equal = []
    for i, M in enumerate(maxima):
        for N in maxima[i + 1:]:
            assert records[N].vol <= records[M].vol
            if records[N].vol == records[M].vol:
                equal.append((M, N))
    assert equal == [(1, 2), (1, 4), (2, 4)]


def test_prime_gap_runs_are_independent_vertices(records):
    top = len(records)
    ps = primes_up_to(top + 200)
    for p, q in zip(ps, ps[1:]):
        last = q - 1
        if last > top:
            break
        n = prime_count(last)
        run = [exponent_vector(M, n) for M in range(p, q)]
        verts = set(records[last].vertices)
        assert all(v in verts for v in run)
        assert int_rank(run) == len(run)


def test_edges_from_skeleton_match_faces():
    for N in range(3, 25):
        p = P(N)
        assert set(skeleton(p)) == {tuple(i for i in range(m.bit_length()) if m >> i & 1)
                                    for m in faces_by_dimension(p)[1]}
