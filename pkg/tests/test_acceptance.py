"""Acceptance battery: one test per criterion, each at its full stated grid.

Every test prints a one-line verdict (visible with ``-s``); the terminal
summary lists all of them regardless of capture.
"""

import math
import subprocess
import sys

import pytest

from binomod.battery import (
    check_binom_oracle,
    check_bridge,
    check_fermat,
    check_leep_shapiro,
    check_near_field,
    check_symmetry,
    scan_vertical_all,
)
from binomod.binom import is_power_of, residue_row
from binomod.field import build_field, subgroup_of_order
from binomod.periodicity import (
    is_period,
    period_set,
    remark_patterns,
    scan_cor_general,
    scan_prop21,
    scan_thm1,
    scan_unsigned,
)
from binomod.subgroups import bounds_report, fermat_count, one_minus_intersection


def verdict(n, ok, msg):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({msg})")
    return ok


def total(reports):
    return sum(r.instances_checked for r in reports), sum(len(r.violations) for r in reports)


def block_row(m, r, p, signed=True):
    """Row k = m p^r - 1 predicted block by block: block j is (-1)^j C(m-1, j), or C(m-1, j) unsigned."""
    pr = p**r
    out = []
    for j in range(m):
        val = math.comb(m - 1, j) * ((-1) ** j if signed else 1)
        for low in range(pr):
            # C(p^r - 1, low) = (-1)^low mod p; the signed row cancels that sign
            out.append(val * (1 if signed else (-1) ** low) % p)
    return out


def exact_row(k, p, signed=True):
    return [((-1) ** i if signed else 1) * math.comb(k, i) % p for i in range(k + 1)]


def powers_upto(p, bound):
    r = 1
    while p**r <= bound:
        yield r
        r += 1


def test_criterion_1_oracle_equivalence():
    reps = [check_binom_oracle(p, 200) for p in (2, 3, 5, 7, 11)]
    n, bad = total(reps)
    assert verdict(1, bad == 0, f"{n} entries, {bad} mismatches")


def test_criterion_2_theorem_one_scan():
    reps = [scan_thm1(p, 300) for p in (2, 3, 5, 7)]
    n, bad = total(reps)
    periodic = sum(r.stats.get("periodic", 0) for r in reps)
    assert verdict(2, bad == 0, f"{n} instances, {periodic} periodic, {bad} violations")
    assert periodic > 0


def test_criterion_3_proposition_scan():
    reps = [scan_prop21(p, 300) for p in (2, 3, 5, 7)]
    n, bad = total(reps)
    assert verdict(3, bad == 0, f"{n} instances, {bad} violations")


def test_criterion_4_remark_sharpness():
    problems = []
    checked = 0
    for p in (2, 5, 7):
        for r in powers_upto(p, 50):
            pr, k = p**r, 3 * p**r - 1
            row = residue_row(k, p).tolist()
            checked += 1
            if row != exact_row(k, p) or row != block_row(3, r, p):
                problems.append(("blocks", p, r))
            if any(not is_period(row, h).holds for h in range(2 * pr, k + 1)):
                problems.append(("h>=2p^r", p, r))
            if not remark_patterns(p, r).ok:
                problems.append(("remark", p, r))
    for r in powers_upto(3, 50):
        pr = 3**r
        k4, k5 = 4 * pr - 1, 5 * pr - 1
        row4, row5 = residue_row(k4, 3).tolist(), residue_row(k5, 3).tolist()
        checked += 2
        if row4 != block_row(4, r, 3) or row4 != exact_row(k4, 3):
            problems.append(("zero-block", 3, r))
        if set(row4[pr : 3 * pr]) != {0}:
            problems.append(("zero-block", 3, r))
        if row5 != block_row(5, r, 3) or row5 != exact_row(k5, 3):
            problems.append(("blocks5", 3, r))
        if any(not is_period(row5, h).holds for h in range(4 * pr, k5 + 1)):
            problems.append(("h>=4*3^r", 3, r))
        if not remark_patterns(3, r).ok:
            problems.append(("remark", 3, r))
    assert verdict(4, not problems, f"{checked} rows, problems={problems}")


def test_criterion_5_prime_power_multiple_scan():
    reps = [scan_cor_general(p, 250, 2) for p in (2, 3)]
    n, bad = total(reps)
    assert verdict(5, bad == 0, f"{n} instances, {bad} violations")


def test_criterion_6_unsigned_scans():
    reps = [scan_unsigned(p, 300) for p in (3, 5, 7)]
    n, bad = total(reps)
    sporadic = {"p": 3, "k": 7, "h": 7, "family": "sporadic"} in reps[0].findings
    row = residue_row(7, 3, "unsigned").tolist()
    sporadic = sporadic and is_period(row, 7).holds and not is_power_of(8, 3)
    # odd periods of the two unsigned families are exactly the predicted ranges
    odd_problems = []
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for r in powers_upto(p, 50):
            pr = p**r
            k = 2 * pr - 1
            u = residue_row(k, p, "unsigned").tolist()
            if u != block_row(2, r, p, signed=False) or u != exact_row(k, p, signed=False):
                odd_problems.append(("2p^r blocks", p, r))
            if {h for h in period_set(u) if h % 2} != set(range(pr, k + 1, 2)):
                odd_problems.append(("2p^r", p, r))
    for r in powers_upto(3, 50):
        pr = 3**r
        k = 4 * pr - 1
        u = residue_row(k, 3, "unsigned").tolist()
        if {h for h in period_set(u) if h % 2} != set(range(3 * pr, k + 1, 2)):
            odd_problems.append(("4*3^r", 3, r))
    ok = bad == 0 and sporadic and not odd_problems
    assert verdict(6, ok, f"{n} instances, {bad} violations, sporadic={sporadic}, odd={odd_problems}")


def test_criterion_7_vertical_scan():
    # stated conclusion: i + 1 is a power of p
    reps = [scan_vertical_all(p, 625, "stated") for p in (2, 3, 5)]
    n, bad = total(reps)
    sample = [v.params for r in reps for v in r.violations[:1]]
    assert verdict(7, bad == 0, f"{n} instances, {bad} violations, first={sample}")


def test_criterion_8_symmetry_identity():
    reps = [check_symmetry(p, s) for p, s in ((2, 3), (2, 4), (3, 3), (3, 4), (5, 2), (5, 3))]
    n, bad = total(reps)
    assert verdict(8, bad == 0, f"{n} pairs, {bad} mismatches")


def test_criterion_9_near_field_scan():
    reps = [check_near_field(256, "one_minus"), check_near_field(256, "plus_one"), check_leep_shapiro(256)]
    n, bad = total(reps)
    assert verdict(9, bad == 0, f"{n} pair checks, {bad} violations")


def test_criterion_10_bridge():
    reps = [check_bridge(p, 200) for p in (2, 3, 5)]
    n, bad = total(reps)
    assert verdict(10, bad == 0, f"{n} (k, h) pairs, {bad} disagreements")


def test_criterion_11_fermat_battery():
    rep = check_fermat(343)
    F7 = build_field(7)
    spots = [(fermat_count(F7, 2).N, fermat_count(F7, 2).d), (fermat_count(F7, 3).N, fermat_count(F7, 3).d)]
    ok = rep.ok and spots == [(8, 4), (9, 9)]
    assert verdict(11, ok, f"{rep.instances_checked} (q, n), {len(rep.violations)} violations, spots={spots}")


def test_criterion_12_refined_remark():
    problems = []
    for q, (p, e) in {9: (3, 2), 16: (2, 4), 25: (5, 2), 49: (7, 2), 64: (2, 6),
                      81: (3, 4), 121: (11, 2), 169: (13, 2)}.items():
        F = build_field(p, e)
        r = math.isqrt(q)
        G = subgroup_of_order(F, r - 1)
        c = one_minus_intersection(F, G).ratio
        b = bounds_report(F, r - 1)
        if c * (r - 1) != r - 2:
            problems.append((q, "c", str(c)))
        if not (b.refined_applicable and b.refined_empirical) or not (r - 1) < r * (r - 1) / (c * (r + 1)):
            problems.append((q, "bound"))
    assert verdict(12, not problems, f"8 fields, problems={problems}")


def test_criterion_13_determinism(tmp_path):
    outs = []
    for j in range(2):
        target = tmp_path / f"run{j}.json"
        res = subprocess.run([sys.executable, "-m", "binomod", "verify-all", "--output", str(target)],
                             capture_output=True, text=True)
        assert res.returncode in (0, 1), res.stderr
        outs.append(target.read_bytes())
    assert verdict(13, outs[0] == outs[1] and len(outs[0]) > 0, f"{len(outs[0])} bytes each")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_vertical_reflected_conclusion(p):
    # companion to criterion 7: the conclusion carried over from rows (p^s - i a power of p)
    assert scan_vertical_all(p, 625, "reflected").ok
