"""
Thick edges and separating edges
================================

Two vertices joined by n parallel edges, and what bridges and loops add.
"""

from math import comb

from cographic.cones import hilbert_basis
from cographic.graph import Graph, thick_edge
from cographic.ring import analyze, cographic_cone, presentation, reduce_separating

# multiplicities follow the central binomial coefficients
for n in range(2, 6):
    r = analyze(thick_edge(n))
    print(n, r.dimension, r.tangent_dimension, r.multiplicity, comb(2 * (n - 1), n - 1))

# the quadrics of I_3: three of type X_ij X_ji = T_i T_j, six exchange relations
for rel in presentation(thick_edge(3)).relation_strings():
    print(rel)

# Hilbert basis of the cone, in cycle-lattice coordinates
sigma, _ = cographic_cone(thick_edge(2))
print(hilbert_basis(sigma))

# a bridge and a loop split off an affine factor of dimension 1 + 2
g = Graph(["a", "b", "c"], [("1", "a", "b"), ("2", "a", "b"), ("s", "b", "c"), ("l", "c", "c")])
reduced, extra = reduce_separating(g)
print(extra, analyze(g).dimension, analyze(reduced).dimension)
