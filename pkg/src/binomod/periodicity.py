"""Periodicity in a range, and exhaustive scans of the periodicity theorems.

A sequence ``f`` on ``[a, b]`` has period ``h`` when ``f(i + h) == f(i)`` for
every ``a <= i <= b - h``.  If ``h > b - a`` nothing is checked and the
period holds vacuously; scans never count such periods as evidence.

Scans compute all periods of a row at once from its border chain (the KMP
failure function): ``h < n`` is a period of a length-``n`` sequence exactly
when ``n - h`` is the length of a border.  :func:`is_period` is the direct
definition and is what the tests compare against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .binom import SignConvention, column, is_power_of, require_prime, residue_row

__all__ = [
    "PeriodVerdict",
    "RangeSpec",
    "ScanReport",
    "Violation",
    "border_array",
    "is_period",
    "minimal_period",
    "period_set",
    "remark_patterns",
    "scan_cor_general",
    "scan_cor_weaker",
    "scan_prop21",
    "scan_thm1",
    "scan_unsigned",
    "scan_vertical",
    "thm1_branch",
    "thm1_hypotheses",
]

K_MAX_LIMIT = 10_000


@dataclass(frozen=True)
class RangeSpec:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a > self.b:
            raise ValueError(f"empty range [{self.a}, {self.b}]")


@dataclass(frozen=True)
class PeriodVerdict:
    h: int
    holds: bool
    vacuous: bool
    first_failure: int | None = None


@dataclass(frozen=True)
class Violation:
    """One scanned instance that contradicts the statement under test."""

    params: dict[str, Any]
    evidence_row: list[int] = field(default_factory=list)
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        d = dict(self.params)
        d["evidence_row"] = list(self.evidence_row)
        if self.detail:
            d["detail"] = self.detail
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Violation":
        d = dict(d)
        row = d.pop("evidence_row", [])
        detail = d.pop("detail", "")
        return cls(d, row, detail)


@dataclass
class ScanReport:
    """Outcome of one exhaustive scan.

    ``stats`` holds named counters (periodic instances, which hypothesis
    branch admitted them, ...); ``findings`` lists notable instances that are
    *consistent* with the statement, e.g. the allowed exceptional cases.
    """

    theorem_id: str
    parameter_space: str
    instances_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)
    findings: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def bump(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem_id": self.theorem_id,
            "parameter_space": self.parameter_space,
            "instances_checked": self.instances_checked,
            "violations": [v.to_dict() for v in self.violations],
            "stats": dict(self.stats),
            "findings": [dict(f) for f in self.findings],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ScanReport":
        return cls(
            theorem_id=d["theorem_id"],
            parameter_space=d["parameter_space"],
            instances_checked=d["instances_checked"],
            violations=[Violation.from_dict(v) for v in d["violations"]],
            stats=dict(d.get("stats", {})),
            findings=[dict(f) for f in d.get("findings", [])],
        )

    @classmethod
    def merge(cls, theorem_id: str, parameter_space: str, parts: Sequence["ScanReport"]) -> "ScanReport":
        """Combine chunk reports; output order depends only on the parameters."""
        out = cls(theorem_id, parameter_space)
        for part in parts:
            out.instances_checked += part.instances_checked
            out.violations.extend(part.violations)
            out.findings.extend(part.findings)
            for key, n in part.stats.items():
                out.bump(key, n)
        out.violations.sort(key=lambda v: _sort_key(v.params))
        out.findings.sort(key=_sort_key)
        out.stats = dict(sorted(out.stats.items()))
        return out


def _sort_key(params: dict[str, Any]) -> tuple:
    return tuple((k, str(type(v)), v) for k, v in sorted(params.items()))


def is_period(seq: Sequence[int], h: int, a: int = 0) -> PeriodVerdict:
    """Check ``seq[i + h] == seq[i]`` over the range, with ``seq[0]`` at index ``a``."""
    if h < 1:
        raise ValueError("h must be positive")
    n = len(seq)
    if n == 0:
        raise ValueError("empty sequence")
    if h > n - 1:
        return PeriodVerdict(h, True, True)
    for j in range(n - h):
        if seq[j + h] != seq[j]:
            return PeriodVerdict(h, False, False, a + j)
    return PeriodVerdict(h, True, False)


def border_array(seq: Sequence[int]) -> list[int]:
    """``f[j]`` is the length of the longest proper border of ``seq[:j]``; ``f[0] = -1``."""
    n = len(seq)
    f = [0] * (n + 1)
    f[0] = -1
    for j in range(1, n + 1):
        b = f[j - 1]
        while b >= 0 and seq[b] != seq[j - 1]:
            b = f[b]
        f[j] = b + 1
    return f


def _periods(seq: Sequence[int]) -> list[int]:
    """All non-vacuous periods of ``seq``, increasing."""
    n = len(seq)
    f = border_array(seq)
    out = []
    b = f[n]
    while b > 0:
        out.append(n - b)
        b = f[b]
    return out


def period_set(seq: Sequence[int], h_max: int | None = None) -> set[int]:
    """Every ``h <= h_max`` that is a non-vacuous period of ``seq``."""
    n = len(seq)
    if h_max is None:
        h_max = n - 1
    if h_max > n - 1:
        raise ValueError(f"h_max={h_max} exceeds b - a = {n - 1}")
    return {h for h in _periods(seq) if h <= h_max}


def minimal_period(seq: Sequence[int]) -> int | None:
    """Smallest non-vacuous period, in linear time, or ``None``."""
    if len(seq) == 0:
        raise ValueError("empty sequence")
    periods = _periods(seq)
    return periods[0] if periods else None


def thm1_branch(p: int, k: int, h: int) -> str | None:
    """Which inequality admits ``(k, h)``: ``"general"``, ``"p3"``, or ``None``."""
    if 3 * h < 2 * k + 5:
        return "general"
    if p == 3 and 5 * h < 4 * k + 9:
        return "p3"
    return None


def thm1_hypotheses(p: int, k: int, h: int) -> bool:
    """``p`` does not divide ``h``, ``k >= 5``, and one of the two inequalities holds."""
    require_prime(p)
    return h % p != 0 and k >= 5 and thm1_branch(p, k, h) is not None


def _check_kmax(k_max: int) -> None:
    if not 0 <= k_max <= K_MAX_LIMIT:
        raise ValueError(f"k_max={k_max} outside [0, {K_MAX_LIMIT}]")


def _vp(n: int, p: int) -> int:
    s = 0
    while n % p == 0:
        n //= p
        s += 1
    return s


def _row(k: int, p: int, convention: SignConvention) -> list[int]:
    return residue_row(k, p, convention).tolist()


def scan_thm1(p: int, k_max: int = 300) -> ScanReport:
    """Signed rows with a short period prime to ``p`` only occur when ``k + 1`` is a ``p``-power."""
    require_prime(p)
    _check_kmax(k_max)
    rep = ScanReport("thm1", f"p={p} k<={k_max} h<=k")
    for k in range(5, k_max + 1):
        row = _row(k, p, SignConvention.SIGNED_LOWER)
        periods = set(_periods(row))
        for h in range(1, k + 1):
            if not thm1_hypotheses(p, k, h):
                continue
            rep.instances_checked += 1
            if h not in periods:
                continue
            rep.bump("periodic")
            rep.bump("branch_" + thm1_branch(p, k, h))
            if not is_power_of(k + 1, p):
                rep.violations.append(Violation({"p": p, "k": k, "h": h}, row, "k+1 not a power of p"))
    return rep


def scan_prop21(p: int, k_max: int = 300) -> ScanReport:
    """With ``k + 1 = p**r * t``, ``t > 1``, no period ``h <= k - p**r`` prime to ``p``."""
    require_prime(p)
    _check_kmax(k_max)
    rep = ScanReport("prop21", f"p={p} k<={k_max} h<=k-p^r")
    for k in range(1, k_max + 1):
        r = _vp(k + 1, p)
        pr = p**r
        if (k + 1) // pr == 1:
            continue
        row = _row(k, p, SignConvention.SIGNED_LOWER)
        periods = set(_periods(row))
        for h in range(1, k - pr + 1):
            if h % p == 0:
                continue
            rep.instances_checked += 1
            if h in periods:
                rep.violations.append(
                    Violation({"p": p, "k": k, "h": h, "r": r}, row, "periodic despite t>1")
                )
    return rep


def scan_cor_weaker(p: int, k_max: int = 300) -> ScanReport:
    """Signed rows: ``p`` not dividing ``h`` and ``2h <= k`` force ``k + 1`` to be a ``p``-power."""
    require_prime(p)
    _check_kmax(k_max)
    rep = ScanReport("cor22", f"p={p} k<={k_max} 2h<=k")
    for k in range(2, k_max + 1):
        row = _row(k, p, SignConvention.SIGNED_LOWER)
        periods = set(_periods(row))
        for h in range(1, k // 2 + 1):
            if h % p == 0:
                continue
            rep.instances_checked += 1
            if h in periods:
                rep.bump("periodic")
                if not is_power_of(k + 1, p):
                    rep.violations.append(Violation({"p": p, "k": k, "h": h}, row, "k+1 not a power of p"))
    return rep


def _cor24_branch(p: int, k: int, h: int, ps: int) -> str | None:
    if 3 * (h - ps) < 2 * (k + 1):
        return "general"
    if p == 3 and 5 * (h - ps) < 4 * (k + 1):
        return "p3"
    return None


def _in_cor24_band(k: int, p: int, ps: int) -> bool:
    pt = p
    while pt <= k:
        pt *= p
    # pt is the least power of p above k; earlier powers cannot satisfy k < p^t
    return pt - ps <= k


def scan_cor_general(p: int, k_max: int = 250, s_max: int = 2) -> ScanReport:
    """Periods ``h = h' p**s``: periodic rows have ``p**t - p**s <= k < p**t``."""
    require_prime(p)
    _check_kmax(k_max)
    rep = ScanReport("cor24", f"p={p} k<={k_max} s<={s_max}")
    for k in range(1, k_max + 1):
        row = None
        periods: set[int] = set()
        for h in range(1, k + 1):
            s = _vp(h, p)
            if s > s_max:
                continue
            ps = p**s
            if k < 5 * ps:
                continue
            branch = _cor24_branch(p, k, h, ps)
            if branch is None:
                continue
            if row is None:
                row = _row(k, p, SignConvention.SIGNED_LOWER)
                periods = set(_periods(row))
            rep.instances_checked += 1
            rep.bump(f"s{s}")
            if h not in periods:
                continue
            rep.bump("periodic")
            rep.bump("branch_" + branch)
            if not _in_cor24_band(k, p, ps):
                rep.violations.append(
                    Violation({"p": p, "k": k, "h": h, "s": s}, row, "k outside [p^t-p^s, p^t)")
                )
    return rep


def _unsigned_class(p: int, k: int, h: int) -> str | None:
    n = k + 1
    if n % 2 == 0 and is_power_of(n // 2, p):
        return "2p^r"
    if p == 3 and n % 4 == 0 and is_power_of(n // 4, 3):
        return "4*3^r"
    if (p, k, h) == (3, 7, 7):
        return "sporadic"
    return None


def scan_unsigned(p: int, k_max: int = 300) -> ScanReport:
    """Unsigned rows: the odd-``h`` classification (odd ``p``) and the ``2h <= k`` corollary.

    Violations carry ``branch`` = ``"thm41"`` or ``"cor42"``.  Every periodic
    instance of the classification branch is listed in ``findings`` with its
    family label.
    """
    require_prime(p)
    _check_kmax(k_max)
    rep = ScanReport("thm41", f"p={p} k<={k_max} unsigned")
    for k in range(2, k_max + 1):
        row = _row(k, p, SignConvention.UNSIGNED)
        periods = set(_periods(row))
        for h in range(1, k + 1):
            if h % p == 0:
                continue
            periodic = h in periods
            if p % 2 == 1 and h % 2 == 1 and thm1_hypotheses(p, k, h):
                rep.instances_checked += 1
                rep.bump("thm41_checked")
                if periodic:
                    label = _unsigned_class(p, k, h)
                    rep.bump("thm41_periodic")
                    if label is None:
                        rep.violations.append(
                            Violation({"branch": "thm41", "p": p, "k": k, "h": h}, row, "unclassified")
                        )
                    else:
                        rep.findings.append({"p": p, "k": k, "h": h, "family": label})
            if 2 * h <= k:
                rep.instances_checked += 1
                rep.bump("cor42_checked")
                if periodic:
                    rep.bump("cor42_periodic")
                    if not is_power_of(k + 1, p):
                        rep.violations.append(
                            Violation({"branch": "cor42", "p": p, "k": k, "h": h}, row, "k+1 not a power of p")
                        )
    return rep


def vertical_hypotheses(p: int, s: int, i: int, h: int) -> str | None:
    """Admitting branch for a column instance, or ``None``."""
    ps = p**s
    if h % p == 0 or not i < ps - 5:
        return None
    if 3 * h < 2 * ps - 2 * i + 3:
        return "general"
    if p == 3 and 5 * h < 4 * ps - 4 * i + 5:
        return "p3"
    return None


def scan_vertical(p: int, s: int, i_max: int | None = None, conclusion: str = "stated") -> ScanReport:
    """Periodicity in ``k`` of ``C(k, i) mod p`` on ``i <= k <= p**s - 1``.

    ``conclusion="stated"`` asserts that ``i + 1`` is a power of ``p``.
    ``conclusion="reflected"`` asserts that ``p**s - i`` is, which is what the
    reflection identity carries over from the row theorem (the column is,
    up to one global sign, the signed row ``p**s - 1 - i``).
    """
    require_prime(p)
    if conclusion not in ("stated", "reflected"):
        raise ValueError(f"unknown conclusion {conclusion!r}")
    ps = p**s
    last = ps - 6
    if i_max is not None:
        last = min(last, i_max)
    tid = "thm46" if conclusion == "stated" else "thm46_reflected"
    rep = ScanReport(tid, f"p={p} s={s} i<={last}")
    for i in range(0, last + 1):
        col = None
        periods: set[int] = set()
        for h in range(1, ps - i):
            branch = vertical_hypotheses(p, s, i, h)
            if branch is None:
                continue
            if col is None:
                col = column(i, p, i, ps - 1).tolist()
                periods = set(_periods(col))
            rep.instances_checked += 1
            if h not in periods:
                continue
            rep.bump("periodic")
            rep.bump("branch_" + branch)
            target = i + 1 if conclusion == "stated" else ps - i
            if not is_power_of(target, p):
                what = "i+1" if conclusion == "stated" else "p^s-i"
                rep.violations.append(
                    Violation({"p": p, "s": s, "i": i, "h": h}, col, f"{what} not a power of p")
                )
    return rep


def _expect(rep: ScanReport, ok: bool, params: dict[str, Any], row: Sequence[int], detail: str) -> None:
    rep.instances_checked += 1
    if not ok:
        rep.violations.append(Violation(params, list(row), detail))


def _blocks(row: Sequence[int], width: int, values: Sequence[int]) -> bool:
    return all(row[j] == values[j // width] for j in range(len(row)))


def _record_minimal(rep: ScanReport, p: int, k: int, urow: list[int], odd: set[int]) -> None:
    # observed, not asserted: minimal period and minimal odd period of an unsigned row
    rep.findings.append({"p": p, "k": k, "kind": "unsigned_minimal", "h": minimal_period(urow),
                         "h_odd": min(odd) if odd else None})


def remark_patterns(p: int, r: int) -> ScanReport:
    """Sharpness patterns and explicit period sets for one ``(p, r)``.

    Checks, where they apply to ``p``:

    * ``k = 3p^r - 1`` (``p != 3``): ones on the outer blocks, periodic for
      every ``h >= 2p^r``, for no ``h <= k - p^r`` prime to ``p``, and the
      boundary period ``h = 2p^r + 1`` just outside the hypotheses;
    * ``k = 5*3^r - 1`` (``p == 3``): every ``h >= 4*3^r`` and the boundary
      period ``4*3^r + 1``;
    * ``k = 2p^r - 1`` (odd ``p``): signed blocks ``1, -1``; unsigned odd
      periods exactly the odd ``h`` in ``[p^r, 2p^r - 1]``;
    * ``k = 4*3^r - 1`` (``p == 3``): signed blocks ``1, 0, 0, -1``; unsigned
      odd periods exactly the odd ``h`` in ``[3^(r+1), 4*3^r - 1]``;
    * ``k = 5p^r - 1`` (``p`` not 2 or 5) has period ``4p^r``.
    """
    require_prime(p)
    pr = p**r
    if not 1 <= pr <= 125:
        raise ValueError("need 1 <= p**r <= 125")
    rep = ScanReport("remarks", f"p={p} r={r}")
    signed, unsigned = SignConvention.SIGNED_LOWER, SignConvention.UNSIGNED
    m1 = p - 1

    if p != 3:
        k = 3 * pr - 1
        row = _row(k, p, signed)
        periods = set(_periods(row))
        outer = all(row[j] == 1 for j in range(pr)) and all(row[j] == 1 for j in range(2 * pr, 3 * pr))
        _expect(rep, outer, {"p": p, "k": k, "check": "outer_blocks"}, row, "outer blocks not all 1")
        for h in range(2 * pr, k + 1):
            _expect(rep, h in periods, {"p": p, "k": k, "h": h, "check": "long_period"}, row, "not periodic")
        for h in range(1, k - pr + 1):
            if h % p:
                _expect(rep, h not in periods, {"p": p, "k": k, "h": h, "check": "short_period"}, row, "periodic")
        if pr >= 2:
            h = 2 * pr + 1
            sharp = h in periods and h % p != 0 and 3 * h == 2 * k + 5 and not is_power_of(k + 1, p)
            _expect(rep, sharp, {"p": p, "k": k, "h": h, "check": "boundary"}, row, "boundary instance not sharp")
            if sharp:
                rep.findings.append({"p": p, "k": k, "h": h, "kind": "boundary"})
    else:
        k = 5 * pr - 1
        row = _row(k, p, signed)
        periods = set(_periods(row))
        for h in range(4 * pr, k + 1):
            _expect(rep, h in periods, {"p": p, "k": k, "h": h, "check": "long_period"}, row, "not periodic")
        h = 4 * pr + 1
        if h <= k:
            sharp = h in periods and h % 3 != 0 and 5 * h == 4 * k + 9 and 3 * h >= 2 * k + 5
            _expect(rep, sharp, {"p": p, "k": k, "h": h, "check": "boundary"}, row, "boundary instance not sharp")
            if sharp:
                rep.findings.append({"p": p, "k": k, "h": h, "kind": "boundary"})

        k = 4 * pr - 1
        row = _row(k, p, signed)
        _expect(rep, _blocks(row, pr, [1, 0, 0, m1]), {"p": p, "k": k, "check": "blocks_1_0_-1"}, row, "pattern")
        urow = _row(k, p, unsigned)
        odd = {h for h in _periods(urow) if h % 2}
        want = set(range(3 * pr, k + 1, 2))
        _expect(rep, odd == want, {"p": p, "k": k, "check": "unsigned_odd_periods"}, urow, f"odd periods {sorted(odd)}")
        _record_minimal(rep, p, k, urow, odd)

    if p % 2 == 1:
        k = 2 * pr - 1
        row = _row(k, p, signed)
        _expect(rep, _blocks(row, pr, [1, m1]), {"p": p, "k": k, "check": "blocks_1_-1"}, row, "pattern")
        urow = _row(k, p, unsigned)
        odd = {h for h in _periods(urow) if h % 2}
        want = set(range(pr, k + 1, 2))
        _expect(rep, odd == want, {"p": p, "k": k, "check": "unsigned_odd_periods"}, urow, f"odd periods {sorted(odd)}")
        _record_minimal(rep, p, k, urow, odd)

    if p not in (2, 5):
        k = 5 * pr - 1
        row = _row(k, p, signed)
        _expect(rep, (4 * pr) in set(_periods(row)), {"p": p, "k": k, "h": 4 * pr, "check": "needs_k_ge_5ps"}, row,
                "not periodic")
    return rep
