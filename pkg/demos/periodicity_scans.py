"""
Periods of residue rows
=======================

A period ``h`` of a row on ``[0, k]`` asks ``f(i + h) = f(i)`` wherever both
sides lie in range.  The scans below walk whole parameter grids and report
every instance that breaks a claimed classification.
"""

from binomod import residue_row
from binomod.periodicity import period_set, scan_thm1, scan_unsigned, scan_vertical, thm1_hypotheses

row = residue_row(14, 3).tolist()
print("row 14 mod 3:", row)
print("periods:", sorted(period_set(row)))

###############################################################################
# The signed-row classification for small periods, over k <= 120.
rep = scan_thm1(3, 120)
print(rep.theorem_id, rep.instances_checked, "instances,", len(rep.violations), "violations")
print("hypotheses hold at (2, 5, 3)?", thm1_hypotheses(2, 5, 3))

###############################################################################
# Unsigned rows admit odd periods in two families plus one sporadic row.
rep = scan_unsigned(3, 60)
for f in rep.findings[:6]:
    print(f)

###############################################################################
# Columns: with the conclusion "i + 1 is a power of p" the scan finds
# counterexamples, e.g. C(k, 8) is odd for all k in [8, 15].  The reflected
# conclusion "p^s - i is a power of p" survives the same grid.
stated = scan_vertical(2, 4)
reflected = scan_vertical(2, 4, conclusion="reflected")
print("stated:", len(stated.violations), "violations; first", stated.violations[0].params)
print("reflected:", len(reflected.violations), "violations")
