"""
Triangle cycles and their duals
===============================

The cusp with cycle (p-1, q-1, r-1) is dual to the cusp whose cycle the
block rule produces.  For the hyperbolic triples this lists both sides.
"""
from tpqr.cusp import charge, dual_cycle, triangle_cycle

for p, q, r in [(3, 3, 4), (3, 4, 4), (4, 5, 6), (3, 3, 7), (4, 4, 4)]:
    c = triangle_cycle(p, q, r)
    d = dual_cycle(c)
    print(f"T_{p},{q},{r}: cycle {c}  dual {d}  lengths {len(c)} -> {len(d)}  charge {charge(c)}")

# the three simple elliptic triples have all-2 cycles and no dual cusp
try:
    dual_cycle(triangle_cycle(3, 3, 3))
except ValueError as exc:
    print("T_3,3,3:", exc)
