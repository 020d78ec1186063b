"""
Finite fields and the set G & (1 - G)
=====================================

Elements of ``F_{p^n}`` are integers whose base-``p`` digits are polynomial
coefficients.  Multiplication goes through exp/log tables.
"""

import numpy as np

from binomod.field import build_field, generates_field, subgroup_of_order
from binomod.subgroups import near_field_check, one_minus_intersection

F = build_field(3, 2)
print(F, "modulus (constant term first):", F.modulus, "generator:", F.generator)
print("powers of the generator:", F.exp[: F.q - 1].tolist())

###############################################################################
# The multiplication table of F_9, straight from the vectorized kernel.
xs = np.arange(F.q)
print(F.mul_many(xs[:, None], xs[None, :]))

###############################################################################
# Subgroups and the intersection with their ``1 - x`` translate.
F16 = build_field(2, 4)
for k in (3, 5, 15):
    G = subgroup_of_order(F16, k)
    st = one_minus_intersection(F16, G)
    print(f"|G|={k:2d} elements={G.elements} |G&(1-G)|={st.size} generates={generates_field(G)}")

###############################################################################
# The near-field condition: for F_7 and G of order 3 it fails at alpha = 2.
F7 = build_field(7)
print(near_field_check(F7, subgroup_of_order(F7, 3), subgroup_of_order(F7, 1)))
