"""The full verification battery behind ``binomod verify-all``.

Each task is a module-level function returning one :class:`ScanReport`, so
tasks can run in worker processes.  Results are collected in task order,
which is fixed by the configuration alone.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

from .binom import SignConvention, binom_mod, residue_row, symmetry_reflect
from .field import build_field, divisors, prime_powers, subgroup_of_order
from .periodicity import (
    ScanReport,
    Violation,
    is_period,
    remark_patterns,
    scan_cor_general,
    scan_cor_weaker,
    scan_prop21,
    scan_thm1,
    scan_unsigned,
    scan_vertical,
)
from .report import RunConfig, VerificationSummary
from .subgroups import (
    bounds_report,
    bridge_divisibility,
    leep_shapiro_check,
    near_field_check,
    one_minus_intersection,
)

__all__ = [
    "check_binom_oracle",
    "check_bridge",
    "check_fermat",
    "check_near_field",
    "check_refined_remark",
    "check_symmetry",
    "run_battery",
    "scan_remarks",
    "scan_vertical_all",
    "tasks_for",
]


def check_binom_oracle(p: int, k_max: int = 200) -> ScanReport:
    """Lucas residues against exact big-integer binomials."""
    rep = ScanReport("binom_oracle", f"p={p} 0<=i<=k<={k_max}")
    for k in range(k_max + 1):
        for i in range(k + 1):
            rep.instances_checked += 1
            got, want = binom_mod(k, i, p), math.comb(k, i) % p
            if got != want:
                rep.violations.append(Violation({"p": p, "k": k, "i": i}, [got, want], "lucas != exact"))
    return rep


def check_symmetry(p: int, s: int) -> ScanReport:
    rep = ScanReport("symmetry", f"p={p} s={s} 0<=i<=k<p^s")
    for k in range(p**s):
        for i in range(k + 1):
            rep.instances_checked += 1
            lhs, rhs = symmetry_reflect(k, i, s, p)
            if lhs != rhs:
                rep.violations.append(Violation({"p": p, "s": s, "k": k, "i": i}, [lhs, rhs], "sides differ"))
    return rep


def check_bridge(p: int, k_max: int = 200) -> ScanReport:
    """Polynomial divisibility against periodicity of the signed row on ``(0, k]``."""
    rep = ScanReport("bridge", f"p={p} h|k<={k_max}")
    for k in range(1, k_max + 1):
        row = residue_row(k, p, SignConvention.SIGNED_LOWER).tolist()
        tail = row[1:]
        for h in divisors(k):
            rep.instances_checked += 1
            div = bridge_divisibility(p, k, h)
            per = is_period(tail, h, a=1).holds
            if div != per:
                rep.violations.append(
                    Violation({"p": p, "k": k, "h": h}, row, f"divisible={div} periodic={per}")
                )
    return rep


def _pairs(q_max: int):
    for p, n in prime_powers(q_max):
        F = build_field(p, n)
        subs = [subgroup_of_order(F, k) for k in divisors(F.q - 1)]
        for G in subs:
            for H in subs:
                if G.order % H.order == 0 and H.order < G.order:
                    yield F, G, H


def check_near_field(q_max: int = 256, sign: str = "one_minus") -> ScanReport:
    tid = "near_field" if sign == "one_minus" else "near_field_plus"
    rep = ScanReport(tid, f"q<={q_max} all H<G sign={sign}")
    for F, G, H in _pairs(q_max):
        rep.instances_checked += 1
        v = near_field_check(F, G, H, sign)
        if v.hypothesis:
            rep.bump("hypothesis_holds")
            rep.bump("generating" if v.generates else "non_generating")
        if not v.ok:
            rep.violations.append(Violation(
                {"q": F.q, "G_order": G.order, "H_order": H.order},
                list(G.elements),
                f"closed={v.subfield_closed} generates={v.generates} full={v.full}",
            ))
    return rep


def check_leep_shapiro(q_max: int = 256) -> ScanReport:
    rep = ScanReport("leep_shapiro", f"q<={q_max} all H<G")
    for F, G, H in _pairs(q_max):
        rep.instances_checked += 1
        v = leep_shapiro_check(F, G, H, diagnose=True)
        if v.hypothesis:
            rep.bump("hypothesis_holds")
        if not v.ok:
            rep.violations.append(Violation(
                {"q": F.q, "G_order": G.order, "H_order": H.order},
                list(v.witnesses),
                f"conclusion={v.conclusion} images={sorted(v.images.items())}",
            ))
    return rep


def check_fermat(q_max: int = 343) -> ScanReport:
    """Point counts, the intersection relation and the bounds, for every ``n | q - 1``."""
    rep = ScanReport("fermat", f"q<={q_max} all n|q-1")
    for p, e in prime_powers(q_max):
        F = build_field(p, e)
        for k in divisors(F.q - 1):
            b = bounds_report(F, k)
            rep.instances_checked += 1
            params = {"q": F.q, "G_order": k}
            problems = []
            if (b.N - b.d) % (b.n * b.n):
                problems.append("n^2 does not divide N-d")
            elif (b.N - b.d) // (b.n * b.n) != b.size:
                problems.append("|G&(1-G)| != (N-d)/n^2")
            for name in ("weil_ok", "thm34_ok", "gv_ok", "thm36_ok", "d_formula_ok"):
                if getattr(b, name) is False:
                    problems.append(name)
            if F.q % 2 == 0:
                rep.bump("even_q_d_eq_3n" if b.d == 3 * b.n else "even_q_d_ne_3n")
            if b.thm36_applicable:
                rep.bump("thm36_applicable")
            if problems:
                rep.violations.append(Violation(params, [b.N, b.d, b.size], ", ".join(problems)))
    return rep


def check_refined_remark(q_max: int = 343) -> ScanReport:
    """Empirical check of the refined bound on ``G = F_r^*`` inside ``F_{r^2}``.

    The bound itself comes without proof; this is evidence, not a proof check.
    """
    rep = ScanReport("refined_remark", f"square q<={q_max}, G=F_r^* (empirical)")
    for p, e in prime_powers(q_max):
        if e % 2:
            continue
        F = build_field(p, e)
        r = math.isqrt(F.q)
        if r < 3:
            continue
        rep.instances_checked += 1
        G = subgroup_of_order(F, r - 1)
        st = one_minus_intersection(F, G)
        b = bounds_report(F, r - 1)
        problems = []
        if st.ratio * (r - 1) != r - 2:
            problems.append(f"c={st.ratio}")
        if not b.refined_applicable or not b.refined_ok:
            problems.append("bound fails")
        elif b.refined_slack * (r - 2) * (r + 1) != 2 * (r - 1):
            problems.append(f"slack={b.refined_slack}")
        if problems:
            rep.violations.append(Violation({"q": F.q, "G_order": r - 1}, list(G.elements), ", ".join(problems)))
    return rep


def scan_remarks(p: int, pr_max: int = 50) -> ScanReport:
    parts, r = [], 1
    while p**r <= pr_max:
        parts.append(remark_patterns(p, r))
        r += 1
    return ScanReport.merge("remarks", f"p={p} 1<=r p^r<={pr_max}", parts)


def scan_vertical_all(p: int, ps_max: int = 625, conclusion: str = "stated") -> ScanReport:
    parts, s = [], 1
    while p**s <= ps_max:
        parts.append(scan_vertical(p, s, conclusion=conclusion))
        s += 1
    tid = "thm46" if conclusion == "stated" else "thm46_reflected"
    return ScanReport.merge(tid, f"p={p} p^s<={ps_max}", parts)


def tasks_for(cfg: RunConfig) -> list[tuple[Callable[..., ScanReport], dict[str, Any]]]:
    """The ordered task list for a configuration."""
    k_oracle = min(cfg.k_max, 200)
    tasks: list[tuple[Callable[..., ScanReport], dict[str, Any]]] = []
    for p in cfg.primes:
        tasks.append((check_binom_oracle, {"p": p, "k_max": k_oracle}))
    for fn in (scan_thm1, scan_prop21, scan_cor_weaker):
        tasks += [(fn, {"p": p, "k_max": cfg.k_max}) for p in cfg.primes]
    tasks += [(scan_cor_general, {"p": p, "k_max": cfg.k_max, "s_max": cfg.s_max}) for p in cfg.primes]
    tasks += [(scan_unsigned, {"p": p, "k_max": cfg.k_max}) for p in cfg.primes]
    tasks += [(scan_remarks, {"p": p}) for p in cfg.primes if p <= 50]
    for conclusion in ("stated", "reflected"):
        tasks += [(scan_vertical_all, {"p": p, "ps_max": cfg.ps_max, "conclusion": conclusion})
                  for p in cfg.primes if p <= cfg.ps_max]
    for p in cfg.primes:
        s = 1
        while p**s <= min(cfg.ps_max, 125):
            tasks.append((check_symmetry, {"p": p, "s": s}))
            s += 1
    tasks += [(check_bridge, {"p": p, "k_max": k_oracle}) for p in cfg.primes]
    nf_q = min(cfg.q_max, 256)
    tasks.append((check_near_field, {"q_max": nf_q, "sign": "one_minus"}))
    tasks.append((check_near_field, {"q_max": nf_q, "sign": "plus_one"}))
    tasks.append((check_leep_shapiro, {"q_max": nf_q}))
    tasks.append((check_fermat, {"q_max": cfg.q_max}))
    tasks.append((check_refined_remark, {"q_max": cfg.q_max}))
    return tasks


def _run(task: tuple[Callable[..., ScanReport], dict[str, Any]]) -> tuple[ScanReport, float]:
    fn, kwargs = task
    t0 = time.perf_counter()
    rep = fn(**kwargs)
    return rep, time.perf_counter() - t0


def run_battery(cfg: RunConfig) -> VerificationSummary:
    tasks = tasks_for(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run, tasks))
    else:
        results = [_run(t) for t in tasks]
    reports = [r for r, _ in results]
    times = [t for _, t in results]
    if cfg.inject_violation:
        target = next((r for r in reports if r.theorem_id == cfg.inject_violation), None)
        if target is None:
            target = ScanReport(cfg.inject_violation, "synthetic")
            reports.append(target)
            times.append(0.0)
        target.violations.append(Violation({"synthetic": True}, [], "injected by test hook"))
    return VerificationSummary(reports, cfg, times)
