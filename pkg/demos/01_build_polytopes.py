"""
Building the polytope of a natural number
=========================================

Each M <= N becomes the lattice point of its prime exponents, and P(N) is the
convex hull of those N points.
"""
from natpoly import build_hull, extend_dimension_with_apex, grow, insert_point, member_points

# 12 = 2^2 * 3 sits at (2, 1, 0, 0, 0) once we use the first five primes
cloud = member_points("naturals", 12)
print(cloud.basis)
print(cloud.points[11])

p12 = build_hull(cloud)
print(p12)
print(sorted(p12.vertices))

# the point of 2 lies on an edge of P(4), so it is not a vertex
p4 = build_hull(member_points("naturals", 4))
print(p4.vertices, len(p4.lattice_points))

# composite steps insert a point, prime steps add a dimension
p6 = insert_point(build_hull(member_points("naturals", 5)), (1, 1, 0), member=6)
print(p6.n_vertices, p6.n_facets)
p5 = extend_dimension_with_apex(p4)
print(p5.dim, p5.normalized_volume)

# grow() reuses the previous polytope; copy() it if you want to keep one
for N, p in grow("naturals", 16):
    print(N, p.dim, p.n_vertices, p.n_facets, p.normalized_volume)
