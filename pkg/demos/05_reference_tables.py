"""
Checking against the published tables
=====================================
"""
from natpoly.hull import grow
from natpoly.metrics import record_from_polytope
from natpoly.refdata import compare_many, load_reference

records = [record_from_polytope(p, N, with_h_star=N <= 20, with_vertices=N <= 16)
           for N, p in grow("naturals", 60)]

for table in ("appendixA", "table1_1", "table3_1"):
    print(compare_many(records, load_reference(table)).to_text())

# a tampered record shows up as a mismatch
bad = records[9]
bad.Vol += 1
print(compare_many([bad], load_reference("appendixA")).to_text())
