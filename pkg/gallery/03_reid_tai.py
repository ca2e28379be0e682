"""
Ages and cyclic quotients
=========================

Two routes to the same verdict: ages of a diagonal action, and the toric
cone on a refined lattice.
"""

from cographic.cones import Cone, classify_cone
from cographic.reid_tai import (
    CyclicAction,
    GroupElementSpec,
    ages,
    classify_cyclic_toric_quotient,
    classify_smooth_quotient,
    cyclic_reduction,
)

# 1/3(1,1): ages 2/3 and 4/3, so not canonical
g = GroupElementSpec(3, (1, 1))
print(ages(g))
print(classify_smooth_quotient(CyclicAction(3, (1, 1)).elements()))

orthant = Cone([(1, 0), (0, 1)])
print(classify_cyclic_toric_quotient(orthant, CyclicAction(3, (1, 1))).as_dict())

# a Gorenstein cone whose Z/2 quotient is not even Q-Gorenstein
c = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
print(classify_cone(c).gorenstein)
print(classify_cyclic_toric_quotient(c, CyclicAction(2, (1, 0, 0))).q_gorenstein)

# abelian groups reduce to their cyclic subgroups
klein = [GroupElementSpec(2, e) for e in [(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)]]
print(cyclic_reduction(klein))
