"""
Combinatorial invariants
========================

Edges, diameter, facet width and the f-vector of P(N).
"""
from natpoly import build_hull, f_vector, member_points, metrics_record, skeleton
from natpoly.metrics import euler_sum, faces_by_dimension

rec = metrics_record("naturals", 56)
print(rec.dim, rec.Vol, rec.vol, rec.n_vertices, rec.n_edges, rec.n_facets)
print("diameter", rec.diameter, "width", rec.facet_width)

p = build_hull(member_points("naturals", 17))
edges = skeleton(p)
print(len(edges), "edges")

f = f_vector(p)
print(f, "euler", euler_sum(f))

# faces are vertex sets stored as bitmasks over point indices
ridges = faces_by_dimension(p)[p.dim - 2]
print(len(ridges), "ridges")
