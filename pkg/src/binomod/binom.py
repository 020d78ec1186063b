"""Binomial coefficients modulo a prime.

Residues are computed with Lucas' theorem: write ``k`` and ``i`` in base
``p`` and multiply the digit-wise binomials.  Digit binomials are evaluated
with the multiplicative formula and modular inverses, so nothing larger than
``p**2`` is ever formed.  Exact big-integer values live only in
:func:`ext_binom`, which the tests use as an oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "MAX_ROW",
    "PrimePowerSplit",
    "ResidueRow",
    "RowTooLongError",
    "SignConvention",
    "binom_mod",
    "binom_mod_split",
    "column",
    "ext_binom",
    "is_power_of",
    "padic_digits",
    "require_prime",
    "residue_row",
    "split",
    "symmetry_reflect",
    "upper_period",
]

MAX_ROW = 1 << 24
_MAX_PRIME = 1 << 31
_MAX_ARG = 1 << 63


class RowTooLongError(ValueError):
    """Requested row exceeds the configured length guard."""


class SignConvention(str, enum.Enum):
    UNSIGNED = "unsigned"
    SIGNED_LOWER = "signed_lower"  # (-1)**i * C(k, i)
    SIGNED_UPPER = "signed_upper"  # (-1)**k * C(k, i)

    def sign(self, k: int, i: int) -> int:
        if self is SignConvention.SIGNED_LOWER:
            return -1 if i & 1 else 1
        if self is SignConvention.SIGNED_UPPER:
            return -1 if k & 1 else 1
        return 1


@lru_cache(maxsize=256)
def require_prime(p: int) -> int:
    """Return ``p`` if it is a prime below 2**31, else raise ``ValueError``.

    Trial division up to ``isqrt(p)`` is deterministic and at most ~46k
    steps in this range; results are cached.
    """
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise TypeError(f"p must be an integer, got {type(p).__name__}")
    p = int(p)
    if not 2 <= p < _MAX_PRIME:
        raise ValueError(f"p={p} outside [2, 2**31)")
    if p < 4:
        return p
    if p % 2 == 0:
        raise ValueError(f"p={p} is not prime")
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            raise ValueError(f"p={p} is not prime")
    return p


def is_power_of(n: int, p: int) -> bool:
    """True iff ``n == p**m`` for some ``m >= 0``."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def padic_digits(b: int, p: int) -> list[int]:
    """Base-``p`` digits of ``b >= 0``, least significant first.

    >>> padic_digits(11, 3)
    [2, 0, 1]
    """
    require_prime(p)
    if b < 0:
        raise ValueError("b must be nonnegative")
    if b == 0:
        return [0]
    digits = []
    while b:
        b, d = divmod(b, p)
        digits.append(d)
    return digits


@dataclass(frozen=True)
class PrimePowerSplit:
    """``b = hi * p**r + lo`` with ``0 <= lo < p**r``."""

    b: int
    p: int
    r: int
    hi: int
    lo: int

    def __post_init__(self) -> None:
        m = self.p**self.r
        if not (0 <= self.lo < m and self.b == self.hi * m + self.lo):
            raise ValueError(f"inconsistent split {self}")


def split(b: int, p: int, r: int) -> PrimePowerSplit:
    require_prime(p)
    if b < 0 or r < 0:
        raise ValueError("b and r must be nonnegative")
    hi, lo = divmod(b, p**r)
    return PrimePowerSplit(b, p, r, hi, lo)


def _digit_binom(a: int, b: int, p: int) -> int:
    # a, b < p so every denominator is a unit mod p
    if b < 0 or b > a:
        return 0
    b = min(b, a - b)
    num = den = 1
    for t in range(b):
        num = num * (a - t) % p
        den = den * (t + 1) % p
    return num * pow(den, -1, p) % p


def _check_args(k: int, i: int) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not (-_MAX_ARG < i < _MAX_ARG and k < _MAX_ARG):
        raise ValueError("arguments must fit in 63 bits")


def binom_mod(k: int, i: int, p: int) -> int:
    """``C(k, i) mod p`` via Lucas' theorem; 0 when ``i`` is outside ``[0, k]``.

    >>> binom_mod(8, 3, 3)
    2
    """
    require_prime(p)
    _check_args(k, i)
    if i < 0 or i > k:
        return 0
    result = 1
    while i:
        k, kd = divmod(k, p)
        i, id_ = divmod(i, p)
        if id_ > kd:
            return 0
        result = result * _digit_binom(kd, id_, p) % p
    return result


def binom_mod_split(k: int, i: int, p: int, r: int) -> int:
    """Evaluate ``C(k, i) mod p`` through a single split at ``p**r``.

    Both factors are themselves computed with :func:`binom_mod`; the result
    must agree with ``binom_mod(k, i, p)``.
    """
    ks, is_ = split(k, p, r), split(i, p, r)
    return binom_mod(ks.hi, is_.hi, p) * binom_mod(ks.lo, is_.lo, p) % p


def ext_binom(k: int, i: int) -> int:
    """Exact coefficient of ``x**i`` in ``(1 + x)**k`` for any integer ``k``.

    Uses the falling-factorial formula ``k(k-1)...(k-i+1) / i!``, which is
    the power-series coefficient for negative ``k`` as well.
    """
    if i < 0:
        return 0
    num = 1
    for t in range(i):
        num *= k - t
    return num // math.factorial(i)


def upper_period(i: int, p: int) -> int:
    """Least power of ``p`` exceeding ``i``: a period of ``k -> C(k, i) mod p``."""
    require_prime(p)
    if i < 0:
        raise ValueError("i must be nonnegative")
    m = 1
    while m <= i:
        m *= p
    return m


def symmetry_reflect(k: int, i: int, s: int, p: int) -> tuple[int, int]:
    """Both sides of the reflection identity inside the triangle ``k < p**s``.

    Returns ``((-1)**k C(k, i), (-1)**i C(p**s-1-i, p**s-1-k))`` mod ``p``.
    """
    require_prime(p)
    top = p**s - 1
    if not 0 <= i <= k <= top:
        raise ValueError(f"need 0 <= i <= k <= p**s - 1, got i={i}, k={k}, p**s={top + 1}")
    lhs = SignConvention.SIGNED_UPPER.sign(k, i) * binom_mod(k, i, p) % p
    rhs = SignConvention.SIGNED_LOWER.sign(k, i) * binom_mod(top - i, top - k, p) % p
    return lhs, rhs


@lru_cache(maxsize=1024)
def _digit_row(a: int, p: int) -> np.ndarray:
    """``C(a, t) mod p`` for ``t = 0..a``, ``a < p``."""
    row = np.empty(a + 1, dtype=np.int64)
    row[0] = 1
    for t in range(1, a + 1):
        row[t] = int(row[t - 1]) * (a - t + 1) % p * pow(t, -1, p) % p
    row.setflags(write=False)
    return row


def _lucas_vector(k: int, idx: np.ndarray, p: int) -> np.ndarray:
    """Vectorized ``C(k, idx) mod p`` for an array of indices in ``[0, k]``."""
    out = np.ones(idx.shape, dtype=np.int64)
    rest = idx.astype(np.int64)
    for kd in padic_digits(k, p):
        table = _digit_row(kd, p)
        d = rest % p
        rest = rest // p
        ok = d <= kd
        vals = np.zeros(idx.shape, dtype=np.int64)
        vals[ok] = table[d[ok]]
        out = out * vals % p
    return out


def _apply_sign(values: np.ndarray, signs: np.ndarray, p: int) -> np.ndarray:
    return np.where(signs < 0, (p - values) % p, values)


@dataclass(frozen=True, eq=False)
class ResidueRow:
    p: int
    k: int
    convention: SignConvention
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]


def residue_row(
    k: int,
    p: int,
    convention: SignConvention | str = SignConvention.SIGNED_LOWER,
    max_len: int = MAX_ROW,
) -> ResidueRow:
    """Row ``k`` of Pascal's triangle mod ``p`` under a sign convention.

    >>> residue_row(5, 3).tolist()
    [1, 1, 1, 2, 2, 2]
    """
    require_prime(p)
    convention = SignConvention(convention)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > max_len:
        raise RowTooLongError(f"k={k} exceeds row guard {max_len}")
    idx = np.arange(k + 1, dtype=np.int64)
    vals = _lucas_vector(k, idx, p)
    if convention is SignConvention.SIGNED_LOWER:
        vals = _apply_sign(vals, np.where(idx & 1, -1, 1), p)
    elif convention is SignConvention.SIGNED_UPPER and k & 1:
        vals = (p - vals) % p
    vals.setflags(write=False)
    return ResidueRow(p, k, convention, vals)


def column(
    i: int,
    p: int,
    k_start: int,
    k_stop: int,
    convention: SignConvention | str = SignConvention.UNSIGNED,
) -> np.ndarray:
    """``sign * C(k, i) mod p`` for ``k_start <= k <= k_stop`` (``k_start >= 0``)."""
    require_prime(p)
    convention = SignConvention(convention)
    if k_start < 0 or i < 0:
        raise ValueError("k_start and i must be nonnegative")
    ks = range(k_start, k_stop + 1)
    vals = np.fromiter((binom_mod(k, i, p) for k in ks), dtype=np.int64, count=len(ks))
    if convention is not SignConvention.UNSIGNED:
        signs = np.fromiter((convention.sign(k, i) for k in ks), dtype=np.int64, count=len(ks))
        vals = _apply_sign(vals, signs, p)
    return vals
