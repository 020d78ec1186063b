"""Multiplicative subgroups ``G`` of ``F_q^*`` and the set ``G & (1 - G)``.

Everything here is exact.  Inequalities involving ``sqrt(q)`` are squared
after checking signs, and ratios are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .binom import require_prime
from .field import FieldSpec, Subgroup, generates_field, is_subfield_closed, subgroup_of_order

__all__ = [
    "BoundReport",
    "FermatCount",
    "IntersectionStats",
    "LeepShapiroVerdict",
    "NearFieldVerdict",
    "bounds_report",
    "bridge_divisibility",
    "fermat_count",
    "intersection_relation_check",
    "leep_shapiro_check",
    "near_field_check",
    "one_minus_intersection",
    "poly_divmod",
]


@dataclass(frozen=True)
class IntersectionStats:
    G: Subgroup
    size_G: int
    intersection: tuple[int, ...]
    size: int
    ratio: Fraction


def one_minus_intersection(field: FieldSpec, G: Subgroup) -> IntersectionStats:
    """Elements ``x`` of ``G`` with ``1 - x`` also in ``G``."""
    elems = np.array(G.elements, dtype=np.int64)
    hits = elems[G.mask[field.one_minus_table[elems]]]
    inter = tuple(int(x) for x in hits)
    return IntersectionStats(G, G.order, inter, len(inter), Fraction(len(inter), G.order))


def _check_proper(G: Subgroup, H: Subgroup) -> None:
    if not H.is_subgroup_of(G) or H.order == G.order:
        raise ValueError(f"H (order {H.order}) is not a proper subgroup of G (order {G.order})")


def _shift(field: FieldSpec, elems: np.ndarray, sign: str) -> np.ndarray:
    if sign == "one_minus":
        return field.one_minus_table[elems]
    if sign == "plus_one":
        return field.add_many(elems, np.ones_like(elems))
    raise ValueError(f"sign must be 'one_minus' or 'plus_one', got {sign!r}")


def _outside(G: Subgroup, H: Subgroup) -> np.ndarray:
    elems = np.array(G.elements, dtype=np.int64)
    return elems[~H.mask[elems]]


@dataclass(frozen=True)
class NearFieldVerdict:
    q: int
    G_order: int
    H_order: int
    sign: str
    hypothesis: bool
    failing_alpha: int | None
    subfield_closed: bool | None
    generates: bool
    full: bool

    @property
    def ok(self) -> bool:
        """The implication: hypothesis gives a subfield, and all of ``F_q^*`` when ``G`` generates."""
        if not self.hypothesis:
            return True
        return bool(self.subfield_closed) and (self.full or not self.generates)


def near_field_check(field: FieldSpec, G: Subgroup, H: Subgroup, sign: str = "one_minus") -> NearFieldVerdict:
    """Test ``1 - a`` (or ``a + 1``) in ``G`` for every ``a`` in ``G`` minus ``H``, and what follows."""
    _check_proper(G, H)
    alphas = _outside(G, H)
    bad = alphas[~G.mask[_shift(field, alphas, sign)]]
    hypothesis = bad.size == 0
    closed = is_subfield_closed(field, (0, *G.elements)) if hypothesis else None
    return NearFieldVerdict(
        q=field.q,
        G_order=G.order,
        H_order=H.order,
        sign=sign,
        hypothesis=hypothesis,
        failing_alpha=None if hypothesis else int(bad[0]),
        subfield_closed=closed,
        generates=generates_field(G),
        full=G.order == field.q - 1,
    )


@dataclass(frozen=True)
class LeepShapiroVerdict:
    q: int
    G_order: int
    H_order: int
    hypothesis: bool
    conclusion: bool
    witnesses: tuple[int, ...]
    images: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.hypothesis or (self.conclusion and not self.witnesses)


def leep_shapiro_check(field: FieldSpec, G: Subgroup, H: Subgroup, diagnose: bool = False) -> LeepShapiroVerdict:
    """Extension of the ``1 - a`` condition from ``G`` minus ``H`` to ``G`` minus ``{1}``.

    ``witnesses`` are the ``b`` in ``H`` minus ``{1}`` with ``1 - b`` not in
    ``G``.  When the hypothesis holds this set must be empty; with
    ``diagnose=True`` and a witness present, ``images`` records the map
    ``a -> (1 - a) / (1 - a b)`` on ``G`` minus ``H`` for the first witness.
    """
    _check_proper(G, H)
    alphas = _outside(G, H)
    hypothesis = bool(G.mask[field.one_minus_table[alphas]].all())
    elems = np.array(G.elements, dtype=np.int64)
    rest = elems[elems != 1]
    conclusion = bool(G.mask[field.one_minus_table[rest]].all())
    hs = np.array(H.elements, dtype=np.int64)
    hs = hs[hs != 1]
    witnesses = tuple(int(b) for b in hs[~G.mask[field.one_minus_table[hs]]])
    images: dict[int, int] = {}
    if diagnose and hypothesis and witnesses:
        beta = witnesses[0]
        for a in alphas.tolist():
            den = field.one_minus(field.mul(a, beta))
            images[a] = field.div(field.one_minus(a), den)
    return LeepShapiroVerdict(field.q, G.order, H.order, hypothesis, conclusion, witnesses, images)


def poly_divmod(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder over ``F_p``; coefficient arrays, constant term first."""
    a = np.array(a, dtype=np.int64) % p
    b = np.trim_zeros(np.array(b, dtype=np.int64) % p, "b")
    if b.size == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.size - 1
    lead_inv = pow(int(b[-1]), -1, p)
    if a.size <= db:
        return np.zeros(1, dtype=np.int64), a
    quot = np.zeros(a.size - db, dtype=np.int64)
    nz = np.nonzero(b)[0]
    for top in range(a.size - 1, db - 1, -1):
        c = int(a[top]) * lead_inv % p
        if c:
            quot[top - db] = c
            a[nz + top - db] = (a[nz + top - db] - c * b[nz]) % p
    return quot, a[:db] if db else np.zeros(1, dtype=np.int64)


def _one_minus_x_power(k: int, p: int) -> np.ndarray:
    # repeated multiplication by (1 - x): independent of Lucas' theorem
    c = np.zeros(k + 1, dtype=np.int64)
    c[0] = 1
    for j in range(1, k + 1):
        c[1 : j + 1] = (c[1 : j + 1] - c[:j]) % p
    return c


def bridge_divisibility(p: int, k: int, h: int) -> bool:
    """Whether ``1 + x^h + ... + x^(k-h)`` divides ``(1 - x)^k - 1`` over ``F_p``."""
    require_prime(p)
    if h < 1 or k < 1 or k % h:
        raise ValueError(f"h={h} must divide k={k}")
    if k > 10_000:
        raise ValueError("k must be at most 10**4")
    num = _one_minus_x_power(k, p)
    num[0] = (num[0] - 1) % p
    den = np.zeros(k - h + 1, dtype=np.int64)
    den[::h] = 1
    _, rem = poly_divmod(num, den, p)
    return not rem.any()


@dataclass(frozen=True)
class FermatCount:
    q: int
    n: int
    N: int
    d: int


def fermat_count(field: FieldSpec, n: int) -> FermatCount:
    """Projective points of ``x^n + y^n = z^n`` over ``F_q`` by direct enumeration.

    The affine chart ``z = 1`` is enumerated over all ``q**2`` pairs; the
    line at infinity contributes ``(x : 1 : 0)`` with ``x^n = -1``.  ``d``
    counts points with a zero coordinate.
    """
    q = field.q
    if n < 1 or (q - 1) % n:
        raise ValueError(f"n={n} must divide q - 1 = {q - 1}")
    xs = np.arange(q, dtype=np.int64)
    pw = field.pow_many(xs, n)
    affine = on_axes = 0
    step = max(1, (1 << 20) // q)
    for lo in range(0, q, step):
        rows = xs[lo : lo + step]
        hit = field.add_many(pw[rows][:, None], pw[None, :]) == 1
        affine += int(hit.sum())
        on_axes += int(hit[rows == 0].sum()) + int(hit[:, 0].sum())
    at_infinity = int((pw == field.neg(1)).sum())
    return FermatCount(q, n, affine + at_infinity, on_axes + at_infinity)


def intersection_relation_check(field: FieldSpec, k: int) -> bool:
    """``|G & (1 - G)| * n**2 == N - d`` for the subgroup of order ``k``."""
    G = subgroup_of_order(field, k)
    n = (field.q - 1) // k
    fc = fermat_count(field, n)
    return one_minus_intersection(field, G).size * n * n == fc.N - fc.d


def _isqrt_exact(q: int) -> int | None:
    r = math.isqrt(q)
    return r if r * r == q else None


@dataclass(frozen=True)
class BoundReport:
    """Point-count bounds for one subgroup; ``*_slack >= 0`` exactly when the bound holds.

    ``weil_slack`` is in squared form.  The refined bound has no proof
    available; ``refined_empirical`` marks it as an observation only.
    """

    q: int
    k: int
    n: int
    N: int
    d: int
    size: int
    c: Fraction
    subfield_closed: bool
    weil_ok: bool
    weil_slack: int
    thm34_applicable: bool
    thm34_ok: bool
    gv_applicable: bool
    gv_ok: bool | None
    gv_slack: Fraction | None
    thm36_applicable: bool
    thm36_ok: bool | None
    thm36_slack: Fraction | None
    refined_applicable: bool
    refined_ok: bool | None
    refined_slack: Fraction | None
    refined_empirical: bool = True
    d_formula_ok: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            out[name] = str(v) if isinstance(v, Fraction) else v
        return out

    @property
    def ok(self) -> bool:
        flags = [self.weil_ok, self.thm34_ok, self.gv_ok, self.thm36_ok, self.refined_ok, self.d_formula_ok]
        return all(f is not False for f in flags)


def bounds_report(field: FieldSpec, k: int) -> BoundReport:
    """Evaluate the Weil, Garcia-Voloch and derived subgroup bounds for ``|G| = k``."""
    q = field.q
    G = subgroup_of_order(field, k)
    n = (q - 1) // k
    fc = fermat_count(field, n)
    N, d = fc.N, fc.d
    size = one_minus_intersection(field, G).size
    c = Fraction(size, k)
    closed = is_subfield_closed(field, (0, *G.elements))
    full = k == q - 1
    odd = q % 2 == 1

    dev = N - q - 1
    weil_slack = ((n - 1) * (n - 2)) ** 2 * q - dev * dev
    thm34_applicable = 2 * size >= k
    # k < 2 sqrt(q)  <=>  k^2 < 4q  for k > 0
    thm34_ok = (not thm34_applicable) or full or k * k < 4 * q

    gv_applicable = thm36_applicable = odd and not closed
    gv_slack = Fraction(n * (n + q - 1 - d), 2) + d - N if gv_applicable else None
    thm36_slack = Fraction(k - 1, 2) - size if thm36_applicable else None

    r = _isqrt_exact(q)
    refined_applicable = r is not None and r > 1 and 2 * size >= k and size > 0
    refined_slack = refined_ok = None
    if refined_applicable:
        refined_slack = Fraction(r * (r - 1)) / (c * (r + 1)) - k
        refined_ok = full or refined_slack > 0

    d_formula_ok = d == (3 * n if k % 2 == 0 else 2 * n) if odd else None
    return BoundReport(
        q=q, k=k, n=n, N=N, d=d, size=size, c=c, subfield_closed=closed,
        weil_ok=weil_slack >= 0, weil_slack=weil_slack,
        thm34_applicable=thm34_applicable, thm34_ok=thm34_ok,
        gv_applicable=gv_applicable, gv_ok=None if gv_slack is None else gv_slack >= 0, gv_slack=gv_slack,
        thm36_applicable=thm36_applicable, thm36_ok=None if thm36_slack is None else thm36_slack >= 0,
        thm36_slack=thm36_slack,
        refined_applicable=refined_applicable, refined_ok=refined_ok, refined_slack=refined_slack,
        d_formula_ok=d_formula_ok,
    )
