"""
Binomial rows modulo a prime
============================

Lucas' theorem turns ``C(k, i) mod p`` into a product of digit binomials,
so whole rows come out of a few vectorized passes.
"""

import math

import numpy as np

from binomod import binom_mod, residue_row, split

# A single value, and the same value through the split at p**r
print("C(8, 3) mod 3 =", binom_mod(8, 3, 3), "  exact:", math.comb(8, 3) % 3)
s = split(26, 3, 2)
print("26 = {} * 9 + {}".format(s.hi, s.lo))

###############################################################################
# Signed rows ``(-1)^i C(k, i)`` are constant exactly when ``k + 1`` is a
# power of ``p``; other rows split into blocks.
for k in (8, 5, 11, 14):
    print(k, residue_row(k, 3).tolist())

###############################################################################
# The three sign conventions side by side.
for conv in ("unsigned", "signed_lower", "signed_upper"):
    print(f"{conv:>13}", residue_row(7, 5, conv).tolist())

###############################################################################
# Rows are numpy arrays, so row statistics are one-liners: here the number
# of nonzero entries, which Lucas predicts as a product over digits.
k = 10**5 + 3
row = residue_row(k, 7, "unsigned").values
print("nonzero entries in row", k, ":", int(np.count_nonzero(row)))
