"""
Fermat curves and point-count bounds
====================================

For ``n | q - 1`` the curve ``x^n + y^n = z^n`` over ``F_q`` carries the
statistics of the subgroup of index ``n``: ``|G & (1 - G)| = (N - d) / n^2``.
"""

from binomod.field import build_field, divisors, subgroup_of_order
from binomod.subgroups import bounds_report, fermat_count, one_minus_intersection

F = build_field(7)
for n in divisors(6):
    fc = fermat_count(F, n)
    G = subgroup_of_order(F, 6 // n)
    print(f"n={n} N={fc.N} d={fc.d} |G&(1-G)|={one_minus_intersection(F, G).size}")

###############################################################################
# Every bound for every subgroup of F_125, with exact slacks.
F = build_field(5, 3)
for k in divisors(F.q - 1):
    b = bounds_report(F, k)
    print(f"k={k:3d} N={b.N:4d} weil_slack={b.weil_slack} gv_slack={b.gv_slack} ok={b.ok}")

###############################################################################
# The refined bound for G = F_r^* in F_{r^2}: observed, not proved.
for p, e in ((3, 2), (2, 4), (5, 2), (7, 2)):
    F = build_field(p, e)
    r = int(F.q**0.5)
    b = bounds_report(F, r - 1)
    print(f"q={F.q} c={b.c} slack={b.refined_slack} (empirical={b.refined_empirical})")
