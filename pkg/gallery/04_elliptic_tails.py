"""
Local structure at a boundary point
===================================

Contract the edges outside the non-locally-free locus, read off the toric
factor, and check the elliptic-tail automorphisms.
"""

from cographic.graph import Graph
from cographic.jacobian import (
    SheafDatum,
    StableDualGraph,
    elliptic_tail_ages,
    elliptic_tail_combinations,
    local_report,
    tail_splitting,
)

# genus-2 component with a loop, joined by p to a nodal rational tail
curve = StableDualGraph(Graph(["c", "t"], [("c1", "c", "c"), ("p", "c", "t"), ("q", "t", "t")]), {"c": 2, "t": 0})
sheaf = SheafDatum(["p", "q"], stab_trivial=True)

r = local_report(curve, sheaf)
print(r.toric_factor.dimension, r.finite_quotient_locus, r.smooth)

s = tail_splitting(curve, sheaf, ["t"])
print(s.case, s.tail_ring, s.total_dimension)

# every elliptic-tail automorphism has age at least one
for combo in elliptic_tail_combinations():
    v = elliptic_tail_ages(*combo)
    print(combo, v.exponents, v.min_age, v.satisfies_rt)
