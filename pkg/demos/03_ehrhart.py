"""
Lattice points and the h*-vector
================================

Counting lattice points in dilates of P(N) gives the Ehrhart data. These
polytopes have no interior lattice points at all.
"""
from natpoly import build_hull, ehrhart_count, h_star, interior_lattice_count, member_points

p = build_hull(member_points("naturals", 12))
print([ehrhart_count(p, t) for t in range(6)])
h = h_star(p)
print(h, sum(h), p.normalized_volume)

# h*_1 is N - n - 1
print(h[1], 12 - p.dim - 1)

for N in (10, 30, 60, 120):
    q = build_hull(member_points("naturals", N))
    print(N, q.dim, interior_lattice_count(q))

# a triangle that is not hollow, for comparison
print(interior_lattice_count(build_hull([(0, 0), (3, 0), (0, 3)])))
