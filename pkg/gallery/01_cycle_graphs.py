"""
Cycle graphs
============

A cycle of length n gives a hypersurface singularity ``XY = T1...Tn``.
"""

from cographic.graph import cycle_graph, format_graph
from cographic.ring import analyze, presentation

# the 4-cycle in the plain text format the CLI reads
g = cycle_graph(4)
print(format_graph(g))

# one relation, linear in neither side
p = presentation(g)
print(p.generators)
print(p.relation_strings())

# dimension n+1, n+2 generators, multiplicity 2
for n in range(2, 7):
    r = analyze(cycle_graph(n))
    print(n, r.dimension, r.tangent_dimension, r.multiplicity, r.gorenstein, r.terminal)
